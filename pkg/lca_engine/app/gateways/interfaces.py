# app/gateways/interfaces.py
from abc import ABC, abstractmethod

from app.infrastructure.dsl_parser import ConfAlgDecl, MapDecl, ModMapDecl, SourceFile


class ISourceGateway(ABC):
    @abstractmethod
    def load(self, path: str) -> SourceFile:
        pass

    @property
    @abstractmethod
    def digest(self) -> str:
        pass

    @abstractmethod
    def get_algebra(self, source: SourceFile, name: str) -> ConfAlgDecl:
        pass

    @abstractmethod
    def get_map(self, source: SourceFile, name: str) -> MapDecl:
        pass

    @abstractmethod
    def get_modmap(self, source: SourceFile, name: str) -> ModMapDecl:
        pass
