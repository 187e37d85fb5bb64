# app/interactors/triple_hom_interactor.py
import logging

from app.config import AppConfig
from app.domain.entities import MapKind
from app.domain.maps import modmap_columns
from app.domain.triple_hom import modmap_kind, split_decompose
from app.gateways.interfaces import ISourceGateway
from app.infrastructure import schemas
from app.infrastructure.dsl_parser import SourceFile
from app.infrastructure.dsl_render import map_images, submodule_lines


class TripleHomInteractor:
    def __init__(self,
                 source_gateway: ISourceGateway,
                 config: AppConfig,
                 logger: logging.Logger):
        self.source_gateway = source_gateway
        self.config = config
        self.logger = logger

    def run(self, source: SourceFile, name: str, decompose: bool = False) -> schemas.TripleHomOut:
        decl = self.source_gateway.get_modmap(source, name)
        A = self.source_gateway.get_algebra(source, decl.source).algebra
        B = self.source_gateway.get_algebra(source, decl.target).algebra
        f = decl.map

        kinds, witnesses = {}, {}
        for kind in MapKind:
            result = modmap_kind(A, B, f, kind, self.logger)
            kinds[kind.value] = result.ok
            if result.witness:
                witnesses[kind.value] = list(result.witness)

        decomposition = None
        if decompose:
            split = split_decompose(
                A, B, f, self.logger,
                center_margin=self.config.CENTER_DEGREE_MARGIN,
                bound_raise=self.config.DELTA_BOUND_RAISE,
                max_rounds=self.config.ENVELOPE_MAX_ROUNDS,
            )
            src, tgt = A.gen_names, B.gen_names
            decomposition = schemas.DecompositionOut(
                label=split.label.value,
                delta=map_images(modmap_columns(split.delta), src, tgt),
                f_I=map_images(modmap_columns(split.f_I), src, tgt),
                f_J=map_images(modmap_columns(split.f_J), src, tgt),
                E=submodule_lines(split.E, tgt),
                E_plus=submodule_lines(split.E_plus, tgt),
                E_minus=submodule_lines(split.E_minus, tgt),
                checks=dict(split.checks),
            )
        return schemas.TripleHomOut(
            map=name,
            source=decl.source,
            target=decl.target,
            kinds=kinds,
            witnesses=witnesses,
            decomposition=decomposition,
        )
