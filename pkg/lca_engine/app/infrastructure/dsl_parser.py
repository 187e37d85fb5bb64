# app/infrastructure/dsl_parser.py
"""Recursive-descent parser for ``.lca`` files.

    file    := decl*
    decl    := "liealg" NAME "{" "basis" names ";" ("[" NAME "," NAME "]" "=" expr ";")* "}"
             | "confalg" NAME "{" "generators" names ";" ("bracket" "[" NAME "~" NAME "]" "=" expr ";")* "}"
             | "confalg" NAME "=" ("cur" "(" NAME ")" | NAME "(+)" NAME) ";"
             | ("map" | "modmap") NAME ":" NAME "->" NAME "{" (NAME "|->" expr ";")* "}"
    expr    := ["+" | "-"] term (("+" | "-") term)*
    term    := factor (["*"] factor)*
    factor  := atom ["^" INT]
    atom    := INT ["/" INT] | NAME | "(" expr ")"

Errors are collected as diagnostics; after a syntax error the parser skips to the next declaration.
"""
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple, Union

from app.domain import poly
from app.domain.conformal import ConformalAlgebra, direct_sum, make_conformal, make_cur, shift_substitute
from app.domain.errors import LcaError
from app.domain.lie import LieAlgebra, lie_new
from app.domain.maps import ConformalMap, ModuleMap
from app.domain.module import ModElement, basis_vector, elem_is_zero, elem_neg, scal_mul, zero
from app.domain.poly import NAME_TO_VAR, Poly, Var

KEYWORDS = frozenset({"liealg", "confalg", "map", "modmap", "basis", "generators", "bracket", "cur"})
RESERVED = frozenset(NAME_TO_VAR)
DECL_KEYWORDS = ("liealg", "confalg", "map", "modmap")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<float>\d+\.\d*|\.\d+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>\|->|->|\(\+\)|[~{}\[\](),;:=+\-*/^])
  | (?P<bad>.)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    message: str
    line: int
    column: int
    snippet: str

    def format(self) -> str:
        caret = " " * (self.column - 1) + "^"
        return f"{self.line}:{self.column}: {self.severity}: {self.message}\n    {self.snippet}\n    {caret}"


@dataclass(frozen=True)
class LieAlgDecl:
    name: str
    algebra: LieAlgebra


@dataclass(frozen=True)
class ConfAlgDecl:
    name: str
    algebra: ConformalAlgebra


@dataclass(frozen=True)
class MapDecl:
    name: str
    source: str
    target: str
    map: ConformalMap


@dataclass(frozen=True)
class ModMapDecl:
    name: str
    source: str
    target: str
    map: ModuleMap


Declaration = Union[LieAlgDecl, ConfAlgDecl, MapDecl, ModMapDecl]


@dataclass(frozen=True)
class SourceFile:
    declarations: Tuple[Declaration, ...]
    warnings: Tuple[Diagnostic, ...] = field(default=(), compare=False)

    def names(self) -> List[str]:
        return [d.name for d in self.declarations]

    def get(self, name: str) -> Optional[Declaration]:
        return next((d for d in self.declarations if d.name == name), None)

    def of_type(self, kind: type) -> List[Declaration]:
        return [d for d in self.declarations if isinstance(d, kind)]


class DslSyntaxError(LcaError):
    code = "PARSE_ERROR"

    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        detail = f"{first.line}:{first.column}: {first.message}" if first else "parse error"
        super().__init__(detail)


class _Abort(Exception):
    """Unwinds to the declaration loop after a syntax error has been recorded."""


def tokenize(text: str) -> Tuple[List[Token], List[Diagnostic], List[str]]:
    lines = text.split("\n")
    tokens: List[Token] = []
    diagnostics: List[Diagnostic] = []
    line, line_start = 1, 0
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        column = m.start() - line_start + 1
        if kind == "newline":
            line += 1
            line_start = m.end()
            continue
        if kind in ("ws", "comment"):
            continue
        snippet = lines[line - 1] if line - 1 < len(lines) else ""
        if kind == "float":
            diagnostics.append(Diagnostic("error", "floating point literals are not allowed", line, column, snippet))
            continue
        if kind == "bad":
            diagnostics.append(Diagnostic("error", f"unexpected character {m.group()!r}", line, column, snippet))
            continue
        tokens.append(Token(kind, m.group(), line, column))
    eof_line = len(lines)
    tokens.append(Token("eof", "", eof_line, len(lines[-1]) + 1))
    return tokens, diagnostics, lines


class Parser:
    def __init__(self, text: str):
        self.tokens, self.diagnostics, self.lines = tokenize(text)
        self.pos = 0
        self.declarations: List[Declaration] = []
        self.scope: Dict[str, Declaration] = {}

    # token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def at(self, text: str) -> bool:
        tok = self.current
        return tok.kind in ("op", "name") and tok.text == text

    def advance(self) -> Token:
        tok = self.current
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def report(self, tok: Token, message: str, severity: str = "error") -> None:
        snippet = self.lines[tok.line - 1] if tok.line - 1 < len(self.lines) else ""
        self.diagnostics.append(Diagnostic(severity, message, tok.line, tok.column, snippet))

    def fail(self, tok: Token, message: str):
        self.report(tok, message)
        raise _Abort()

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.current.text or "end of file"
            self.fail(self.current, f"expected '{text}', found '{found}'")
        return self.advance()

    def expect_name(self, what: str = "a name") -> Token:
        tok = self.current
        if tok.kind != "name" or tok.text in KEYWORDS:
            self.fail(tok, f"expected {what}, found '{tok.text or 'end of file'}'")
        return self.advance()

    def expect_int(self) -> Token:
        tok = self.current
        if tok.kind != "int":
            self.fail(tok, f"expected an integer, found '{tok.text or 'end of file'}'")
        return self.advance()

    def new_name(self, what: str) -> Token:
        tok = self.expect_name(what)
        if tok.text in RESERVED:
            self.report(tok, f"'{tok.text}' is a reserved variable name")
        return tok

    def synchronize(self) -> None:
        depth = 0
        while self.current.kind != "eof":
            tok = self.current
            if depth == 0 and tok.kind == "name" and tok.text in DECL_KEYWORDS and self.pos > 0:
                prev = self.tokens[self.pos - 1]
                if prev.text in (";", "}"):
                    return
            if tok.text == "{":
                depth += 1
            elif tok.text == "}":
                depth = max(0, depth - 1)
                if depth == 0:
                    self.advance()
                    return
            self.advance()

    # declarations

    def parse_file(self) -> None:
        while self.current.kind != "eof":
            tok = self.current
            try:
                if self.at("liealg"):
                    self.parse_liealg()
                elif self.at("confalg"):
                    self.parse_confalg()
                elif self.at("map") or self.at("modmap"):
                    self.parse_map()
                else:
                    self.fail(tok, f"expected a declaration, found '{tok.text}'")
            except _Abort:
                self.synchronize()

    def declare(self, tok: Token, decl: Declaration) -> None:
        if tok.text in self.scope:
            self.report(tok, f"duplicate name '{tok.text}'")
            return
        self.scope[tok.text] = decl
        self.declarations.append(decl)

    def lookup(self, tok: Token, kind: type, what: str):
        decl = self.scope.get(tok.text)
        if decl is None:
            self.fail(tok, f"unknown name '{tok.text}'")
        if not isinstance(decl, kind):
            self.fail(tok, f"'{tok.text}' is not a {what}")
        return decl

    def parse_names(self) -> List[Token]:
        names = [self.new_name("a generator name")]
        while not self.at(";"):
            if self.at(","):
                self.advance()
            names.append(self.new_name("a generator name"))
        self.expect(";")
        seen: Set[str] = set()
        for tok in names:
            if tok.text in seen:
                self.report(tok, f"duplicate generator '{tok.text}'")
            seen.add(tok.text)
        return names

    def parse_liealg(self) -> None:
        self.advance()
        name = self.new_name("an algebra name")
        self.expect("{")
        self.expect("basis")
        basis = [t.text for t in self.parse_names()]
        n = len(basis)
        given: Dict[Tuple[int, int], Tuple[Token, ModElement]] = {}
        while not self.at("}"):
            start = self.expect("[")
            left = self.generator_index(basis)
            self.expect(",")
            right = self.generator_index(basis)
            self.expect("]")
            self.expect("=")
            value = self.parse_element(basis, frozenset())
            self.expect(";")
            if (left, right) in given:
                self.report(start, "duplicate bracket")
            given[(left, right)] = (start, value)
        self.expect("}")
        c = [[[0] * n for _ in range(n)] for _ in range(n)]
        origin = (0,) * len(Var)
        for (i, j), (_, value) in given.items():
            vec = [poly.coeff(p, origin) for p in value.comps]
            c[i][j] = vec
            if (j, i) not in given:
                c[j][i] = [-x for x in vec]
        try:
            algebra = lie_new(basis, c)
        except LcaError as exc:
            self.report(name, exc.detail)
            return
        self.declare(name, LieAlgDecl(name.text, algebra))

    def parse_confalg(self) -> None:
        self.advance()
        name = self.new_name("an algebra name")
        if self.at("="):
            self.advance()
            if self.at("cur"):
                self.advance()
                self.expect("(")
                g = self.lookup(self.expect_name("a Lie algebra name"), LieAlgDecl, "Lie algebra")
                self.expect(")")
                algebra = make_cur(g.algebra)
            else:
                left = self.lookup(self.expect_name("an algebra name"), ConfAlgDecl, "conformal algebra")
                self.expect("(+)")
                right = self.lookup(self.expect_name("an algebra name"), ConfAlgDecl, "conformal algebra")
                algebra = direct_sum(left.algebra, right.algebra)
            self.expect(";")
            self.declare(name, ConfAlgDecl(name.text, algebra))
            return
        self.expect("{")
        self.expect("generators")
        gens = [t.text for t in self.parse_names()]
        n = len(gens)
        given: Dict[Tuple[int, int], ModElement] = {}
        while not self.at("}"):
            start = self.expect("bracket")
            self.expect("[")
            left = self.generator_index(gens)
            self.expect("~")
            right = self.generator_index(gens)
            self.expect("]")
            self.expect("=")
            value = self.parse_element(gens, frozenset({Var.D, Var.LAM}))
            self.expect(";")
            if (left, right) in given:
                self.report(start, "duplicate bracket")
            given[(left, right)] = value
        self.expect("}")
        table = [[zero(n) for _ in range(n)] for _ in range(n)]
        for (i, j), value in given.items():
            table[i][j] = value
            if (j, i) not in given:
                table[j][i] = elem_neg(shift_substitute(value))
        self.declare(name, ConfAlgDecl(name.text, make_conformal(gens, table)))

    def parse_map(self) -> None:
        keyword = self.advance()
        is_modmap = keyword.text == "modmap"
        name = self.new_name("a map name")
        self.expect(":")
        source_tok = self.expect_name("an algebra name")
        source = self.lookup(source_tok, ConfAlgDecl, "conformal algebra")
        self.expect("->")
        target_tok = self.expect_name("an algebra name")
        target = self.lookup(target_tok, ConfAlgDecl, "conformal algebra")
        if not is_modmap and source.name != target.name:
            self.report(target_tok, "a conformal map must map an algebra to itself")
        src_names = list(source.algebra.gen_names)
        tgt_names = list(target.algebra.gen_names)
        allowed = frozenset({Var.D}) if is_modmap else frozenset({Var.D, Var.X})
        self.expect("{")
        columns: Dict[int, ModElement] = {}
        while not self.at("}"):
            gen_tok = self.current
            index = self.generator_index(src_names)
            self.expect("|->")
            value = self.parse_element(tgt_names, allowed)
            self.expect(";")
            if index in columns:
                self.report(gen_tok, f"duplicate image for '{gen_tok.text}'")
            columns[index] = value
        close = self.expect("}")
        for i, gen in enumerate(src_names):
            if i not in columns:
                self.report(close, f"generator '{gen}' is not mapped and is sent to 0", "warning")
        rank = len(tgt_names)
        images = [columns.get(i, zero(rank)) for i in range(len(src_names))]
        if is_modmap:
            decl = ModMapDecl(name.text, source.name, target.name, ModuleMap.from_columns(rank, images))
        else:
            if rank != len(src_names):
                return
            decl = MapDecl(name.text, source.name, target.name, ConformalMap.from_columns(images))
        self.declare(name, decl)

    def generator_index(self, names: Sequence[str]) -> int:
        tok = self.expect_name("a generator name")
        if tok.text not in names:
            self.fail(tok, f"unknown generator '{tok.text}'")
        return list(names).index(tok.text)

    # expressions

    def parse_element(self, names: Sequence[str], allowed: FrozenSet[Var]) -> ModElement:
        start = self.current
        value = self.parse_expr(names, allowed)
        if isinstance(value, ModElement):
            return value
        if not value:
            return zero(len(names))
        self.fail(start, "expected a combination of generators")

    def parse_expr(self, names, allowed):
        negate = False
        if self.at("+") or self.at("-"):
            negate = self.advance().text == "-"
        value = self.parse_term(names, allowed)
        if negate:
            value = -value
        while self.at("+") or self.at("-"):
            op = self.advance()
            rhs = self.parse_term(names, allowed)
            value = self.combine_sum(op, value, rhs if op.text == "+" else -rhs, len(names))
        return value

    def combine_sum(self, op: Token, left, right, rank: int):
        if isinstance(left, ModElement) and isinstance(right, ModElement):
            return left + right
        if not isinstance(left, ModElement) and not isinstance(right, ModElement):
            return left + right
        scalar = right if isinstance(left, ModElement) else left
        if not scalar:
            return left if isinstance(left, ModElement) else right
        self.fail(op, "cannot add a polynomial to a module element")

    def starts_factor(self) -> bool:
        tok = self.current
        if tok.kind in ("int", "name"):
            return tok.text not in KEYWORDS
        return tok.kind == "op" and tok.text == "("

    def parse_term(self, names, allowed):
        value = self.parse_factor(names, allowed)
        while self.at("*") or self.starts_factor():
            op = self.current
            if self.at("*"):
                self.advance()
            rhs = self.parse_factor(names, allowed)
            value = self.multiply(op, value, rhs)
        return value

    def multiply(self, op: Token, left, right):
        left_vec = isinstance(left, ModElement)
        right_vec = isinstance(right, ModElement)
        if left_vec and right_vec:
            self.fail(op, "cannot multiply two module elements")
        if left_vec:
            return scal_mul(right, left)
        if right_vec:
            return scal_mul(left, right)
        return left * right

    def parse_factor(self, names, allowed):
        value = self.parse_atom(names, allowed)
        if self.at("^"):
            op = self.advance()
            exponent = int(self.expect_int().text)
            if isinstance(value, ModElement):
                self.fail(op, "cannot raise a module element to a power")
            value = value ** exponent
        return value

    def parse_atom(self, names, allowed):
        tok = self.current
        if tok.kind == "int":
            self.advance()
            value = poly.const(int(tok.text))
            if self.at("/"):
                self.advance()
                den = self.expect_int()
                if int(den.text) == 0:
                    self.fail(den, "division by zero")
                value = poly.const(f"{tok.text}/{den.text}")
            return value
        if self.at("("):
            self.advance()
            value = self.parse_expr(names, allowed)
            self.expect(")")
            return value
        if tok.kind == "name" and tok.text not in KEYWORDS:
            self.advance()
            if tok.text in NAME_TO_VAR:
                v = NAME_TO_VAR[tok.text]
                if v not in allowed:
                    self.fail(tok, self.variable_message(tok.text))
                return poly.var(v)
            if tok.text in names:
                return basis_vector(len(names), list(names).index(tok.text))
            self.fail(tok, f"unknown name '{tok.text}'")
        self.fail(tok, f"malformed polynomial: unexpected '{tok.text or 'end of file'}'")

    @staticmethod
    def variable_message(name: str) -> str:
        if name == "x":
            return "variable 'x' is only allowed in map bodies"
        if name == "lam":
            return "variable 'lam' is only allowed in confalg brackets"
        if name == "D":
            return "variable 'D' is not allowed in Lie algebra brackets"
        return f"variable '{name}' is not allowed here"


def parse(text: str) -> Union[SourceFile, List[Diagnostic]]:
    """Parse a whole file; returns the diagnostics instead when any of them is an error."""
    parser = Parser(text)
    parser.parse_file()
    errors = [d for d in parser.diagnostics if d.severity == "error"]
    if errors:
        return sorted(parser.diagnostics, key=lambda d: (d.line, d.column))
    return SourceFile(tuple(parser.declarations), tuple(parser.diagnostics))


def load(text: str) -> SourceFile:
    result = parse(text)
    if isinstance(result, SourceFile):
        return result
    raise DslSyntaxError(result)
