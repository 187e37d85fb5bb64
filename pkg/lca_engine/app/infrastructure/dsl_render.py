# app/infrastructure/dsl_render.py
from functools import singledispatch
from typing import Dict, List, Sequence

from app.domain import poly
from app.domain.conformal import ConformalAlgebra
from app.domain.lie import LieAlgebra
from app.domain.linalg import SubmoduleBasis
from app.domain.maps import ConformalMap, ModuleMap
from app.domain.module import ModElement, elem_is_zero, render_element
from app.infrastructure.dsl_parser import ConfAlgDecl, LieAlgDecl, MapDecl, ModMapDecl, SourceFile

INDENT = "  "


@singledispatch
def render(obj, **kwargs) -> str:
    raise TypeError(f"cannot render {type(obj).__name__}")


@render.register
def _(p: poly.Poly, **kwargs) -> str:
    return poly.render_poly(p)


@render.register
def _(g: LieAlgebra, name: str = "g", **kwargs) -> str:
    lines = [f"liealg {name} {{", f"{INDENT}basis {', '.join(g.basis_names)};"]
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            vec = g.c[i][j]
            if any(vec):
                value = ModElement(g.dim, tuple(poly.const(c) for c in vec))
                lines.append(f"{INDENT}[{g.basis_names[i]}, {g.basis_names[j]}] = {render_element(value, g.basis_names)};")
    lines.append("}")
    return "\n".join(lines)


@render.register
def _(A: ConformalAlgebra, name: str = "R", **kwargs) -> str:
    names = A.gen_names
    lines = [f"confalg {name} {{", f"{INDENT}generators {', '.join(names)};"]
    for i in range(A.rank):
        for j in range(A.rank):
            entry = A.table[i][j]
            # a zero entry must be explicit when its mirror is not, or the parser would fill it in
            if elem_is_zero(entry) and elem_is_zero(A.table[j][i]):
                continue
            lines.append(f"{INDENT}bracket [{names[i]} ~ {names[j]}] = {render_element(entry, names)};")
    lines.append("}")
    return "\n".join(lines)


def _map_body(columns: List[ModElement], source_names, target_names) -> List[str]:
    return [
        f"{INDENT}{gen} |-> {render_element(col, target_names)};"
        for gen, col in zip(source_names, columns)
    ]


@render.register
def _(phi: ConformalMap, name: str = "phi", algebra_name: str = "R", algebra: ConformalAlgebra = None, **kwargs) -> str:
    names = algebra.gen_names if algebra is not None else tuple(f"e{i + 1}" for i in range(phi.rank))
    lines = [f"map {name} : {algebra_name} -> {algebra_name} {{"]
    lines += _map_body(phi.columns(), names, names)
    lines.append("}")
    return "\n".join(lines)


@render.register
def _(
        f: ModuleMap,
        name: str = "f",
        source_name: str = "A",
        target_name: str = "B",
        source: ConformalAlgebra = None,
        target: ConformalAlgebra = None,
        **kwargs,
) -> str:
    src = source.gen_names if source is not None else tuple(f"e{i + 1}" for i in range(f.in_rank))
    tgt = target.gen_names if target is not None else tuple(f"e{i + 1}" for i in range(f.out_rank))
    columns = [f.column(j) for j in range(f.in_rank)]
    lines = [f"modmap {name} : {source_name} -> {target_name} {{"]
    lines += _map_body(columns, src, tgt)
    lines.append("}")
    return "\n".join(lines)


@render.register
def _(source_file: SourceFile, **kwargs) -> str:
    algebras: Dict[str, ConformalAlgebra] = {}
    blocks = []
    for decl in source_file.declarations:
        if isinstance(decl, LieAlgDecl):
            blocks.append(render(decl.algebra, name=decl.name))
        elif isinstance(decl, ConfAlgDecl):
            algebras[decl.name] = decl.algebra
            blocks.append(render(decl.algebra, name=decl.name))
        elif isinstance(decl, MapDecl):
            blocks.append(render(decl.map, name=decl.name, algebra_name=decl.source, algebra=algebras[decl.source]))
        elif isinstance(decl, ModMapDecl):
            blocks.append(render(
                decl.map,
                name=decl.name,
                source_name=decl.source,
                target_name=decl.target,
                source=algebras[decl.source],
                target=algebras[decl.target],
            ))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def map_images(columns: Sequence[ModElement], source_names: Sequence[str], target_names: Sequence[str]) -> Dict[str, str]:
    """Generator name -> rendered image, the form maps take in reports."""
    return {gen: render_element(col, target_names) for gen, col in zip(source_names, columns)}


def submodule_lines(s: SubmoduleBasis, names: Sequence[str]) -> List[str]:
    return [render_element(col, names) for col in s.columns()]
