# app/interactors/solve_interactor.py
import logging

from app.config import AppConfig
from app.domain.derivations import inner_quotient_dimension, solve_space
from app.domain.entities import EquationKind
from app.gateways.interfaces import ISourceGateway
from app.infrastructure import schemas
from app.infrastructure.dsl_parser import SourceFile
from app.infrastructure.dsl_render import map_images


class SolveInteractor:
    def __init__(self,
                 source_gateway: ISourceGateway,
                 config: AppConfig,
                 logger: logging.Logger):
        self.source_gateway = source_gateway
        self.config = config
        self.logger = logger

    def solve(
            self,
            source: SourceFile,
            name: str,
            kind: EquationKind,
            deg_d: int,
            deg_x: int
    ) -> schemas.SolutionSpaceOut:
        A = self.source_gateway.get_algebra(source, name).algebra
        space = solve_space(A, kind, deg_d, deg_x, self.logger, cross_check=self.config.CROSS_CHECK_GCTDER)
        names = A.gen_names
        return schemas.SolutionSpaceOut(
            algebra=name,
            kind=kind.value,
            deg_d=deg_d,
            deg_x=deg_x,
            x_cap=space.x_cap,
            dimension=space.dimension,
            inner_quotient_dimension=inner_quotient_dimension(space),
            basis=[map_images(phi.columns(), names, names) for phi in space.basis],
            tau_basis=[map_images(tau.columns(), names, names) for tau in space.tau_basis],
        )
