# app/tests/unit/test_dsl_render.py
import random

import pytest

from app.domain import poly
from app.domain.conformal import direct_sum, make_conformal, make_cur, make_vir
from app.domain.lie import make_heisenberg, make_sl2, make_sl3
from app.domain.maps import ConformalMap, ModuleMap, dl_map
from app.domain.module import ModElement, make, zero
from app.domain.poly import Var
from app.infrastructure.dsl_parser import ConfAlgDecl, LieAlgDecl, MapDecl, ModMapDecl, SourceFile, load
from app.infrastructure.dsl_render import map_images, render


def random_poly(rng: random.Random, variables, max_degree: int = 2) -> poly.Poly:
    p = poly.ZERO
    for _ in range(rng.randint(0, 3)):
        exponents = {v: rng.randint(0, max_degree) for v in variables}
        num = rng.randint(-5, 5)
        den = rng.choice([1, 1, 1, 2, 3])
        p = p + poly.monomial(exponents, f"{num}/{den}")
    return p


def random_element(rng: random.Random, rank: int, variables) -> ModElement:
    if rng.random() < 0.2:
        return zero(rank)
    return make([random_poly(rng, variables) for _ in range(rank)])


def random_source(rng: random.Random) -> SourceFile:
    decls = []
    algebras = []
    for k in range(rng.randint(1, 3)):
        rank = rng.randint(1, 3)
        names = [f"g{k}_{i}" for i in range(rank)]
        table = [[random_element(rng, rank, (Var.D, Var.LAM)) for _ in range(rank)] for _ in range(rank)]
        name = f"R{k}"
        decls.append(ConfAlgDecl(name, make_conformal(names, table)))
        algebras.append((name, rank))
    for k in range(rng.randint(0, 2)):
        name, rank = rng.choice(algebras)
        columns = [random_element(rng, rank, (Var.D, Var.X)) for _ in range(rank)]
        decls.append(MapDecl(f"m{k}", name, name, ConformalMap.from_columns(columns)))
    for k in range(rng.randint(0, 2)):
        (src, src_rank), (tgt, tgt_rank) = rng.choice(algebras), rng.choice(algebras)
        columns = [random_element(rng, tgt_rank, (Var.D,)) for _ in range(src_rank)]
        decls.append(ModMapDecl(f"f{k}", src, tgt, ModuleMap.from_columns(tgt_rank, columns)))
    return SourceFile(tuple(decls))


@pytest.mark.parametrize(
    "decl",
    [
        LieAlgDecl("sl2", make_sl2()),
        LieAlgDecl("sl3", make_sl3()),
        LieAlgDecl("heis", make_heisenberg()),
        ConfAlgDecl("Vir", make_vir()),
        ConfAlgDecl("C", make_cur(make_sl2())),
        ConfAlgDecl("CC", direct_sum(make_cur(make_sl2()), make_cur(make_sl2()))),
    ],
    ids=lambda d: d.name,
)
def test_builtin_round_trip(decl):
    source = SourceFile((decl,))
    assert load(render(source)) == source


def test_virasoro_rendering():
    assert render(make_vir(), name="Vir") == "confalg Vir {\n  generators L;\n  bracket [L ~ L] = (D + 2*lam) L;\n}"


def test_map_rendering():
    C = make_cur(make_sl2())
    text = render(dl_map(C), name="dL", algebra_name="C", algebra=C)
    assert text.splitlines()[0] == "map dL : C -> C {"
    assert "  e |-> (D + x) e;" in text.splitlines()


def test_sample_round_trip(sample_path):
    source = load(sample_path.read_text(encoding="utf-8"))
    assert load(render(source)) == source


def test_generated_files_round_trip():
    for seed in range(500):
        source = random_source(random.Random(seed))
        text = render(source)
        assert load(text) == source, f"seed {seed}:\n{text}"


def test_empty_source_renders_empty():
    assert render(SourceFile(())) == ""


def test_map_images():
    C = make_cur(make_sl2())
    images = map_images(dl_map(C).columns(), C.gen_names, C.gen_names)
    assert images == {"e": "(D + x) e", "f": "(D + x) f", "h": "(D + x) h"}


def test_unsupported_objects():
    with pytest.raises(TypeError):
        render(object())
