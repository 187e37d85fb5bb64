# app/api/dependencies.py
from app.config import AppConfig
from app.gateways.source_gateway import SourceGateway
from app.infrastructure.event_dispatcher import EventDispatcher
from app.interactors.axiom_interactor import AxiomInteractor
from app.interactors.report_interactor import ReportInteractor
from app.interactors.solve_interactor import SolveInteractor
from app.interactors.triple_hom_interactor import TripleHomInteractor
from app.main import Application


def get_config(application: Application) -> AppConfig:
    return application.config


def get_event_dispatcher(application: Application) -> EventDispatcher:
    return application.event_dispatcher


def get_source_gateway(application: Application) -> SourceGateway:
    return SourceGateway(application.logger)


def get_axiom_interactor(application: Application, source_gateway: SourceGateway) -> AxiomInteractor:
    return AxiomInteractor(source_gateway, application.logger)


def get_solve_interactor(application: Application, source_gateway: SourceGateway) -> SolveInteractor:
    return SolveInteractor(source_gateway, get_config(application), application.logger)


def get_triple_hom_interactor(application: Application, source_gateway: SourceGateway) -> TripleHomInteractor:
    return TripleHomInteractor(source_gateway, get_config(application), application.logger)


def get_report_interactor(application: Application, source_gateway: SourceGateway) -> ReportInteractor:
    return ReportInteractor(
        get_axiom_interactor(application, source_gateway),
        get_event_dispatcher(application),
        get_config(application),
        application.logger,
    )
