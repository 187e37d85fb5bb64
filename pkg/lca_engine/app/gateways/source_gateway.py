# app/gateways/source_gateway.py
import hashlib
import logging
from pathlib import Path

from app.domain.errors import UnknownNameError
from app.gateways.interfaces import ISourceGateway
from app.infrastructure import dsl_parser
from app.infrastructure.dsl_parser import ConfAlgDecl, MapDecl, ModMapDecl, SourceFile


class SourceGateway(ISourceGateway):
    """Reads ``.lca`` files and resolves their declarations by name."""

    def __init__(self, logger: logging.Logger):
        self.logger = logger
        self._digest = ""

    def load(self, path: str) -> SourceFile:
        data = Path(path).read_bytes()
        self._digest = hashlib.sha256(data).hexdigest()
        source = dsl_parser.load(data.decode("utf-8"))
        for warning in source.warnings:
            self.logger.warning("%s: %s", path, warning.format())
        self.logger.info("loaded %s: %d declaration(s)", path, len(source.declarations))
        return source

    @property
    def digest(self) -> str:
        return self._digest

    def _resolve(self, source: SourceFile, name: str, kind: type, what: str):
        decl = source.get(name)
        if decl is None:
            raise UnknownNameError(f"no declaration named {name!r}")
        if not isinstance(decl, kind):
            raise UnknownNameError(f"{name!r} is not a {what}")
        return decl

    def get_algebra(self, source: SourceFile, name: str) -> ConfAlgDecl:
        return self._resolve(source, name, ConfAlgDecl, "conformal algebra")

    def get_map(self, source: SourceFile, name: str) -> MapDecl:
        return self._resolve(source, name, MapDecl, "conformal map")

    def get_modmap(self, source: SourceFile, name: str) -> ModMapDecl:
        return self._resolve(source, name, ModMapDecl, "module map")
