# app/interactors/axiom_interactor.py
import logging

from app.domain.conformal import check_jacobi, check_skew
from app.domain.module import render_element
from app.gateways.interfaces import ISourceGateway
from app.infrastructure import schemas
from app.infrastructure.dsl_parser import SourceFile


class AxiomInteractor:
    def __init__(self,
                 source_gateway: ISourceGateway,
                 logger: logging.Logger):
        self.source_gateway = source_gateway
        self.logger = logger

    def check(self, source: SourceFile, name: str) -> schemas.AxiomCheckOut:
        A = self.source_gateway.get_algebra(source, name).algebra
        skew = check_skew(A)
        jacobi = check_jacobi(A)
        residual = skew.residual if not skew else jacobi.residual
        if not (skew and jacobi):
            self.logger.warning("%s fails its axioms: skew %s, jacobi %s", name, skew.ok, jacobi.ok)
        return schemas.AxiomCheckOut(
            algebra=name,
            rank=A.rank,
            skew=skew.ok,
            jacobi=jacobi.ok,
            skew_witness=list(skew.witness) if skew.witness else None,
            jacobi_witness=list(jacobi.witness) if jacobi.witness else None,
            residual=render_element(residual, A.gen_names) if residual is not None else None,
        )
