# app/interactors/report_interactor.py
import logging
from typing import Callable, List, Sequence

from app.config import AppConfig
from app.domain import poly
from app.domain.conformal import ConformalAlgebra, conformal_center, lie_algebra_of, make_vir, table_degree
from app.domain.derivations import (
    delta_phi,
    gc_centralizer,
    gc_closure_members,
    inner_quotient_dimension,
    inner_space,
    lift_relation_residual,
    satisfies,
    solve_space,
    space_contains,
    space_equal,
    span_contains,
    span_rank,
)
from app.domain.entities import EquationKind, MapKind, SplitLabel
from app.domain.errors import PRECONDITION_ERRORS, LcaError
from app.domain.events import ClaimChecked
from app.domain.lie import lie_center, lie_is_perfect
from app.domain.maps import ConformalMap, dl_map, identity_map, map_scale, x_power_times
from app.domain.module import elem_is_zero
from app.domain.poly import Var
from app.domain.triple_hom import modmap_kind, split_decompose
from app.infrastructure import schemas
from app.infrastructure.dsl_parser import ConfAlgDecl, MapDecl, ModMapDecl, SourceFile
from app.infrastructure.event_dispatcher import EventDispatcher
from app.interactors.axiom_interactor import AxiomInteractor

K = EquationKind


def _bounds(deg_d: int, deg_x: int) -> str:
    return f"deg_d={deg_d}, deg_x={deg_x}"


def _is_virasoro(A: ConformalAlgebra) -> bool:
    return A.rank == 1 and A.table == make_vir(A.gen_names[0]).table


def _is_simple_current(A: ConformalAlgebra) -> bool:
    g = lie_algebra_of(A)
    return g is not None and lie_is_perfect(g) and not lie_center(g)


class ReportInteractor:
    """Runs the verification ledger over every declaration of a file."""

    def __init__(self,
                 axiom_interactor: AxiomInteractor,
                 event_dispatcher: EventDispatcher,
                 config: AppConfig,
                 logger: logging.Logger):
        self.axiom_interactor = axiom_interactor
        self.event_dispatcher = event_dispatcher
        self.config = config
        self.logger = logger

    def claim(self, claim: str, anchor: str, check: Callable[[], bool], bounds: str = "") -> bool:
        try:
            passed = bool(check())
        except LcaError as exc:
            self.logger.warning("%s: %s", claim, exc)
            passed = False
        self.event_dispatcher.dispatch(ClaimChecked(claim=claim, anchor=anchor, passed=passed, bounds=bounds))
        return passed

    def run(self, source: SourceFile) -> List[schemas.Result]:
        results: List[schemas.Result] = []
        for decl in source.of_type(ConfAlgDecl):
            axioms = self.axiom_interactor.check(source, decl.name)
            results.append(axioms)
            self.claim(
                f"{decl.name} satisfies skew-symmetry and the Jacobi identity",
                "conformal algebra axioms",
                lambda: axioms.skew and axioms.jacobi,
            )
            if not (axioms.skew and axioms.jacobi):
                continue
            A = decl.algebra
            if A.rank > self.config.REPORT_MAX_SOLVER_RANK:
                self.logger.info("%s has rank %d, skipping the solver claims", decl.name, A.rank)
                continue
            if _is_virasoro(A):
                self.virasoro_claims(decl.name, A)
            elif _is_simple_current(A):
                self.current_claims(decl.name, A)

        algebras = {d.name: d.algebra for d in source.of_type(ConfAlgDecl)}
        for decl in source.of_type(MapDecl):
            self.map_claims(decl, algebras[decl.source])
        for decl in source.of_type(ModMapDecl):
            self.modmap_claims(decl, algebras[decl.source], algebras[decl.target])
        return results

    def solve(self, A: ConformalAlgebra, kind: EquationKind, deg_d: int, deg_x: int):
        return solve_space(A, kind, deg_d, deg_x, self.logger, cross_check=self.config.CROSS_CHECK_GCTDER)

    def virasoro_claims(self, name: str, A: ConformalAlgebra):
        vd, vx = self.config.REPORT_VIR_DEG_D, self.config.REPORT_VIR_DEG_X
        for kind in (K.TC, K.TQC, K.ZTDER):
            self.claim(
                f"{kind.value}({name}) = 0",
                "the Virasoro algebra has no triple centroids",
                lambda: self.solve(A, kind, vd, vx).dimension == 0,
                _bounds(vd, vx),
            )
        for deg_d, deg_x in sorted({(2, 2), (vd, vx)}):
            self.claim(
                f"every conformal derivation of {name} is inner",
                "derivations of the Virasoro algebra",
                lambda: self._all_inner(A, self.solve(A, K.CDER, deg_d, deg_x)),
                _bounds(deg_d, deg_x),
            )
            self.claim(
                f"ctder({name}) = cder({name}) = cinn({name})",
                "triple derivations of a centerless algebra are derivations",
                lambda: self._triple_equals_inner(A, deg_d, deg_x),
                _bounds(deg_d, deg_x),
            )
        self.common_claims(name, A, self.config.REPORT_CUR_DEG_D, self.config.REPORT_CUR_DEG_X)

    def current_claims(self, name: str, A: ConformalAlgebra):
        cd, cx = self.config.REPORT_CUR_DEG_D, self.config.REPORT_CUR_DEG_X
        bounds = _bounds(cd, cx)
        dL = dl_map(A)
        self.claim(f"d^L is a conformal derivation of {name}", "non-inner derivation of a current algebra",
                   lambda: satisfies(A, dL, K.CDER))

        def dl_is_outer() -> bool:
            # d^L has D-degree 1
            cder = self.solve(A, K.CDER, max(cd, 1), cx)
            return space_contains(cder, dL, self.logger) and not span_contains(inner_space(A, cx).basis, dL)

        self.claim(f"d^L is not inner in {name}", "non-inner derivation of a current algebra", dl_is_outer, bounds)

        def derivations_are_dl_plus_inner() -> bool:
            cder = self.solve(A, K.CDER, cd, cx)
            x_cap = cder.x_cap
            extra = [x_power_times(m, dL) for m in range(x_cap)]
            allowed = list(inner_space(A, cx).basis) + extra
            return all(span_contains(allowed, phi) for phi in cder.basis) and all(
                span_contains(cder.basis, phi) for phi in extra
            )

        self.claim(f"every conformal derivation of {name} is q(x) d^L plus inner",
                   "derivations of a current algebra", derivations_are_dl_plus_inner, bounds)
        self.claim(f"ctder({name}) = cder({name})", "triple derivations of a centerless algebra are derivations",
                   lambda: space_equal(self.solve(A, K.CTDER, cd, cx), self.solve(A, K.CDER, cd, cx)), bounds)

        def centroid_is_scalar() -> bool:
            tc = self.solve(A, K.TC, cd, cx)
            scalars = [x_power_times(m, identity_map(A.rank)) for m in range(tc.x_cap + 1)]
            return span_rank(tc.basis) == len(scalars) and all(span_contains(tc.basis, s) for s in scalars)

        self.claim(f"tc({name}) = {{g(x) Id}}", "triple centroid of a current algebra", centroid_is_scalar, bounds)

        def generalized_modulo_inner() -> bool:
            space = self.solve(A, K.GCTDER, cd, cx)
            inner = list(inner_space(A, cx).basis)
            ident = identity_map(A.rank)
            d_id = map_scale(ident, poly.var(Var.D))
            expected = [x_power_times(m, d_id) for m in range(space.x_cap)]
            expected += [x_power_times(m, ident) for m in range(space.x_cap + 1)]
            return all(span_contains(inner + expected, phi) for phi in space.basis) and all(
                span_contains(inner + list(space.basis), phi) for phi in expected
            )

        self.claim(f"gctder({name}) = (f(x) D + g(x)) Id plus inner",
                   "generalized triple derivations of a current algebra", generalized_modulo_inner, bounds)
        self.common_claims(name, A, cd, cx)

    def common_claims(self, name: str, A: ConformalAlgebra, deg_d: int, deg_x: int):
        bounds = _bounds(deg_d, deg_x)

        def joint_equals_sum() -> bool:
            joint = self.solve(A, K.GCTDER, deg_d, deg_x).basis
            summed = list(self.solve(A, K.CTDER, deg_d, deg_x).basis) + list(self.solve(A, K.TC, deg_d, deg_x).basis)
            return span_rank(joint) == span_rank(summed) == span_rank(list(joint) + summed)

        self.claim(f"gctder({name}) = ctder({name}) + tc({name})", "phi - tau is a triple centroid",
                   joint_equals_sum, bounds)

        def towers() -> bool:
            spaces = {k: self.solve(A, k, deg_d, deg_x).basis for k in (K.ZTDER, K.TC, K.TQC, K.CDER, K.CTDER, K.GCTDER)}
            chains = [
                (K.ZTDER, K.TC), (K.TC, K.TQC), (K.CDER, K.CTDER), (K.CTDER, K.GCTDER),
            ]
            inner = inner_space(A, deg_x).basis
            return all(span_contains(spaces[K.CDER], phi) for phi in inner) and all(
                span_contains(spaces[big], phi) for small, big in chains for phi in spaces[small]
            )

        self.claim(f"cinn <= cder <= ctder <= gctder and ztder <= tc <= tqc for {name}",
                   "towers of derivation spaces", towers, bounds)

        def closed_under_bracket() -> bool:
            ctder = self.solve(A, K.CTDER, deg_d, deg_x).basis
            tc = self.solve(A, K.TC, deg_d, deg_x).basis
            tqc = self.solve(A, K.TQC, deg_d, deg_x).basis
            gctder = self.solve(A, K.GCTDER, deg_d, deg_x).basis
            pairs = [(ctder, ctder, K.CTDER), (tc, tc, K.TC), (ctder, tc, K.TC), (gctder, tc, K.TC), (ctder, tqc, K.TQC)]
            return all(
                gc_closure_members(A, phi, psi, kind)
                for left, right, kind in pairs for phi in left for psi in right
            )

        self.claim(f"brackets of {name} derivation spaces stay in the expected spaces",
                   "triple derivation spaces are conformal subalgebras", closed_under_bracket, bounds)

        def generalized_closed() -> bool:
            space = self.solve(A, K.GCTDER, deg_d, deg_x)
            pairs = list(zip(space.basis, space.tau_basis))
            return all(
                gc_closure_members(A, phi, psi, K.GCTDER, (tau, sigma))
                for phi, tau in pairs for psi, sigma in pairs
            )

        self.claim(f"brackets of gctder({name}) pairs stay in gctder({name})",
                   "triple derivation spaces are conformal subalgebras", generalized_closed, bounds)

        def central_is_an_ideal() -> bool:
            ztder = self.solve(A, K.ZTDER, deg_d, deg_x).basis
            ctder = self.solve(A, K.CTDER, deg_d, deg_x).basis
            gctder = self.solve(A, K.GCTDER, deg_d, deg_x).basis
            return all(
                gc_closure_members(A, phi, psi, K.ZTDER) and gc_closure_members(A, psi, phi, K.ZTDER)
                for phi in ztder for psi in list(ctder) + list(gctder)
            )

        self.claim(f"ztder({name}) is an ideal of ctder({name}) and gctder({name})",
                   "central triple derivations form an ideal", central_is_an_ideal, bounds)

        center_bound = table_degree(A) + self.config.CENTER_DEGREE_MARGIN
        if conformal_center(A, center_bound, self.logger):
            return

        self.claim(f"tqc({name}) is commutative and centralized by tc({name})",
                   "quasicentroids of a centerless algebra commute",
                   lambda: self._commuting(self.solve(A, K.TQC, deg_d, deg_x).basis), bounds)
        self.claim(f"the centralizer of cinn({name}) in ctder({name}) is zero",
                   "triple derivations commuting with inner ones vanish",
                   lambda: not gc_centralizer(self.solve(A, K.CTDER, deg_d, deg_x).basis, inner_space(A, deg_x).basis),
                   bounds)

        def attached_derivations() -> bool:
            for phi in self.solve(A, K.CTDER, deg_d, deg_x).basis:
                delta = self._delta(A, phi)
                if delta != phi or not all(elem_is_zero(r) for r in lift_relation_residual(A, phi, delta)):
                    return False
            return True

        self.claim(f"every triple derivation of {name} is its own attached derivation",
                   "attached derivation of a triple derivation", attached_derivations, bounds)

    def map_claims(self, decl: MapDecl, A: ConformalAlgebra):
        if not satisfies(A, decl.map, K.CTDER):
            return
        center_bound = table_degree(A) + self.config.CENTER_DEGREE_MARGIN
        if conformal_center(A, center_bound, self.logger):
            return
        self.claim(f"triple derivation {decl.name} of {decl.source} is a derivation",
                   "triple derivations of a centerless algebra are derivations",
                   lambda: satisfies(A, decl.map, K.CDER) and self._delta(A, decl.map) == decl.map)

    def modmap_claims(self, decl: ModMapDecl, A: ConformalAlgebra, B: ConformalAlgebra):
        if not modmap_kind(A, B, decl.map, MapKind.TRIPLEHOM, self.logger):
            return
        try:
            split = split_decompose(
                A, B, decl.map, self.logger,
                center_margin=self.config.CENTER_DEGREE_MARGIN,
                bound_raise=self.config.DELTA_BOUND_RAISE,
                max_rounds=self.config.ENVELOPE_MAX_ROUNDS,
            )
        except PRECONDITION_ERRORS as exc:
            self.logger.info("%s: split not applicable (%s)", decl.name, exc.code)
            return
        except LcaError as exc:
            self.logger.warning("%s: %s", decl.name, exc)
            split = None
        expected = {
            SplitLabel.HOM: MapKind.HOM,
            SplitLabel.ANTIHOM: MapKind.ANTIHOM,
        }

        def label_consistent() -> bool:
            if split is None:
                return False
            kind = expected.get(split.label)
            return kind is None or bool(modmap_kind(A, B, decl.map, kind, self.logger))

        self.claim(f"triple homomorphism {decl.name} splits as a homomorphism plus an anti-homomorphism",
                   "triple homomorphisms into centerless targets split",
                   lambda: split is not None and all(ok for _, ok in split.checks) and label_consistent())

    def _delta(self, A: ConformalAlgebra, phi: ConformalMap) -> ConformalMap:
        return delta_phi(A, phi, self.logger, self.config.CENTER_DEGREE_MARGIN, self.config.DELTA_BOUND_RAISE)

    def _all_inner(self, A: ConformalAlgebra, space) -> bool:
        inner = inner_space(A, space.deg_x)
        return inner_quotient_dimension(space) == 0 and all(space_contains(inner, phi, self.logger) for phi in space.basis)

    def _triple_equals_inner(self, A: ConformalAlgebra, deg_d: int, deg_x: int) -> bool:
        ctder = self.solve(A, K.CTDER, deg_d, deg_x)
        cder = self.solve(A, K.CDER, deg_d, deg_x)
        return space_equal(ctder, cder) and space_equal(ctder, inner_space(A, deg_x))

    @staticmethod
    def _commuting(maps: Sequence[ConformalMap]) -> bool:
        return len(gc_centralizer(maps, maps)) == len(maps)
