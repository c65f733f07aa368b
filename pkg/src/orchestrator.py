"""
Orchestrator - builds the verification Report behind every CLI command.

Responsibilities:
  * Turn parsed CLI inputs into calls on the library modules.
  * Record every numeric gate as a named residual with its tolerance.
  * Run seeded randomized trials (with an optional tqdm bar).
  * Convert library errors into a failed Report carrying the error name.
"""
import logging
import math
from fractions import Fraction
from typing import Callable, Iterable, List, Optional

import numpy as np
from tqdm import tqdm

from src.base import Report
from src.config import get_config
from src.elliptic.periods import EllipticParameters, j_from_parameters, period_data
from src.elliptic.roundtrip import ROUNDTRIP_TOL, inverse_roundtrip
from src.errors import QMFError, SchemaError
from src.groups import actions
from src.hodge.connection import (
    CONSTANCY_TOL,
    ODE_TOL,
    connection_matrix,
    constancy_residual,
    f_ode_residual,
    g_ode_residual,
    transversality_of,
)
from src.hodge.frame import HodgeFrame, LatticePoint
from src.hodge.paths import EllipticPath, TauPath, get_path
from src.hodge.structure import check_all
from src.linalg import matrix_to_json
from src.modular.eisenstein import EISENSTEIN_B, eisenstein, eisenstein_E
from src.modular.quasimodular import (
    E2,
    E4,
    E6,
    check_derivation,
    depth,
    is_homogeneous,
    parse_polynomial,
    ramanujan_derive,
    weight,
)
from src.quintic.frobenius import picard_fuchs_residual, picard_fuchs_solve
from src.quintic.instantons import instanton_numbers, yukawa
from src.quintic.tau import (
    TAU_CONNECTION_TOL,
    tau1_polynomial,
    tau1_q_part,
    verify_tau_matrix,
    verify_transversality_odes,
)
from src.series import codec
from src.siegel.domain import (
    SiegelBlocks,
    random_g0 as random_siegel_g0,
    random_siegel_point,
    riemann_check,
    route_mismatch,
    to_siegel,
)

logger = logging.getLogger(__name__)

ANOMALY_TOL = 1e-8
LEGENDRE_TOL = 1e-10
SIEGEL_ROUTE_TOL = 1e-8
EXPECTED_INSTANTONS = (2875, 609250, 317206375)

# Trial counts used by selfcheck when --trials is not given.
SELFCHECK_TRIALS = {"legendre": 100, "group": 100, "siegel": 50, "tau": 20}


def _complex_pair(z: complex) -> List[float]:
    z = complex(z)
    return [z.real, z.imag]


class Orchestrator:
    """Wires the library modules to the CLI and produces Reports."""

    def __init__(self, seed: Optional[int] = None, trials: Optional[int] = None):
        self.config = get_config()
        self.seed = self.config.seed if seed is None else seed
        self.trials = self.config.trials if trials is None else trials
        self._trials_override = trials

    # ---------------------------------------------------------- plumbing

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def _progress(self, n: int, desc: str) -> Iterable[int]:
        return tqdm(range(n), desc=desc, disable=not self.config.show_progress, leave=False)

    def run(self, command: List[str], build: Callable[[Report], None]) -> Report:
        """
        Run ``build`` against a fresh Report.

        Library errors become ``report.error``; SchemaError is re-raised so
        the CLI can print the expected schema and exit 2.
        """
        report = Report(command=list(command))
        try:
            build(report)
        except SchemaError:
            raise
        except QMFError as e:
            logger.info("%s failed: %s", " ".join(command), e)
            report.error = type(e).__name__
            report.message = str(e)
        return report

    # ---------------------------------------------------------- eisenstein_qm

    def eisenstein(self, k: int, terms: int, graded: bool = False) -> Report:
        def build(report: Report):
            if graded:
                report.payload["series"] = codec.to_json(eisenstein(k, terms))
            else:
                report.payload["coefficients"] = [int(c) for c in eisenstein_E(k, terms).coefficients]
        return self.run(["eisenstein", f"--k={k}", f"--terms={terms}"], build)

    def qm_derive(self, text: str, check_terms: int) -> Report:
        def build(report: Report):
            poly = parse_polynomial(text)
            derived = ramanujan_derive(poly)
            report.payload.update({
                "input": str(poly.as_expr()),
                "derivative": str(derived.as_expr()),
                "weight": weight(poly),
                "derivative_weight": weight(derived),
                "homogeneous": is_homogeneous(poly),
                "depth": depth(poly),
            })
            if check_terms > 0:
                defect = check_derivation(poly, check_terms)
                report.add("D(expand p) - expand(D p)", float(max(abs(c) for c in defect.coefficients)), 0.0)
        return self.run(["qm", "derive", text], build)

    # ---------------------------------------------------------- hodge_core

    def hodge_check(self, x: LatticePoint, trials: int = 0) -> Report:
        def build(report: Report):
            p1, p2, p3 = check_all(x)
            report.add("P1 residual", p1.residual, 1e-9)
            report.check("P2 direct sum", p2.ok)
            report.check("P3 positivity", p3.ok)
            report.payload.update({
                "frame": x.frame.name,
                "hodge_dimensions": list(p2.dimensions),
                "p3_spectra": [list(s) for s in p3.spectra],
                "p3_imaginary_residuals": list(p3.imaginary_residuals),
            })
            if trials:
                self._hodge_invariance(report, x, trials)
        return self.run(["hodge", "check"], build)

    def _hodge_invariance(self, report: Report, x: LatticePoint, trials: int):
        rng = self.rng()
        status = tuple(r.ok for r in check_all(x))
        symplectic = x.frame.weight == 1 and _is_standard_symplectic(x.frame)
        g0_changes = gamma_changes = 0
        for _ in self._progress(trials, "invariance"):
            g = actions.random_g0(x.frame, rng)
            if tuple(r.ok for r in check_all(x.act(g))) != status:
                g0_changes += 1
            if symplectic:
                a = actions.random_gamma(x.frame, rng)
                moved = LatticePoint(x.frame, np.array(a.evalf(), dtype=complex) @ x.p)
                if tuple(r.ok for r in check_all(moved)) != status:
                    gamma_changes += 1
        report.check("P1-P3 invariant under G0", g0_changes == 0)
        if symplectic:
            report.check("P1-P3 invariant under Gamma_Z", gamma_changes == 0)

    def hodge_connection(self, path_spec: str, t, v) -> Report:
        def build(report: Report):
            path = get_path(path_spec)
            t_vec = path.default_point() if t is None else np.atleast_1d(np.asarray(t, dtype=complex))
            v_vec = np.ones(path.dimension, dtype=complex) if v is None else np.atleast_1d(np.asarray(v, dtype=complex))
            a = connection_matrix(path, t_vec, v_vec)
            transversality = transversality_of(a, path.frame)
            constancy = constancy_residual(path, t_vec, v_vec)
            report.add("transversality", transversality.max_violation, TAU_CONNECTION_TOL)
            report.add("dF = AF + FA^T", f_ode_residual(path, t_vec, v_vec), ODE_TOL)
            report.add("dG = AG + G conj(A)^T", g_ode_residual(path, t_vec, v_vec), ODE_TOL)
            report.payload.update({
                "path": path.name,
                "t": [_complex_pair(z) for z in t_vec],
                "v": [_complex_pair(z) for z in v_vec],
                "connection": matrix_to_json(a),
                "offending": [list(o) for o in transversality.offending],
                "constancy": {"df": constancy.df, "skew": constancy.skew, "ok": constancy.ok},
            })
        return self.run(["hodge", "connection", path_spec], build)

    # ---------------------------------------------------------- group_actions

    def group_membership(self, kind: str, matrix, frame: HodgeFrame = None) -> Report:
        def build(report: Report):
            fr = frame or HodgeFrame.default_for(np.shape(matrix)[0])
            if kind == "gamma":
                member = actions.gamma_membership(matrix, fr)
            else:
                member = actions.g0_membership(matrix, fr)
            report.check(f"member of {'Gamma_Z' if kind == 'gamma' else 'G0'}", member)
            report.payload["frame"] = fr.name
        return self.run(["group", kind], build)

    # ---------------------------------------------------------- elliptic_periods

    def elliptic_periods(self, t1: complex, t2: complex, t3: complex) -> Report:
        def build(report: Report):
            t = EllipticParameters(t1, t2, t3)
            data = period_data(t)
            per = data.per
            report.add("|det(per) - 1|", data.legendre_residual, LEGENDRE_TOL)
            report.check("Im(x1 conj(x3)) > 0", (per[0, 0] * np.conj(per[1, 0])).imag > 0)
            report.payload.update({
                "per": matrix_to_json(per),
                "ratio": _complex_pair(data.ratio),
                "roots": [_complex_pair(r) for r in data.roots],
                "j": _complex_pair(j_from_parameters(t)),
            })
        return self.run(["elliptic", "periods"], build)

    def elliptic_roundtrip(self, tau: complex, terms: int) -> Report:
        def build(report: Report):
            result = inverse_roundtrip(tau, terms)
            report.add("relative j mismatch", result.j_mismatch, ROUNDTRIP_TOL)
            report.add("reduced point mismatch", result.point_mismatch, ROUNDTRIP_TOL)
            report.payload.update({
                "tau": _complex_pair(result.tau),
                "parameters": [_complex_pair(v) for v in result.parameters],
                "ratio": _complex_pair(result.ratio),
                "reduced_ratio": _complex_pair(result.reduced_ratio),
                "reduced_tau": _complex_pair(result.reduced_tau),
                "j": _complex_pair(result.j_from_parameters),
                "legendre_residual": result.legendre_residual,
            })
        return self.run(["elliptic", "roundtrip"], build)

    # ---------------------------------------------------------- siegel

    def siegel_check(self, blocks: SiegelBlocks) -> Report:
        def build(report: Report):
            result = riemann_check(blocks)
            report.add("x3^T x1 - x1^T x3", result.symmetry_residual, 1e-10)
            report.add("x3^T x2 - x1^T x4 + I", result.bilinear_residual, 1e-10)
            report.check("x1, x2 invertible", result.x1_inverse_condition > 1e-10
                         and result.x2_inverse_condition > 1e-10)
            report.check("positivity", result.min_eigenvalue > 0)
            report.payload.update({"genus": blocks.genus,
                                   "max_relation_residual": result.max_residual,
                                   "min_eigenvalue": result.min_eigenvalue})
        return self.run(["siegel", "check"], build)

    def siegel_map(self, blocks: SiegelBlocks) -> Report:
        def build(report: Report):
            image = to_siegel(blocks)
            report.add("z - z^T", image.symmetry_residual, 1e-9)
            report.check("Im z positive definite", image.min_imag_eigenvalue > 0)
            report.payload.update({"genus": blocks.genus, "z": matrix_to_json(image.z)})
        return self.run(["siegel", "map"], build)

    # ---------------------------------------------------------- mirror_quintic

    def mq_instantons(self, degree: int) -> Report:
        def build(report: Report):
            numbers = instanton_numbers(yukawa(truncation=degree), degree)
            report.payload["n"] = [str(n) for n in numbers]
        return self.run(["mq", "instantons", f"--degree={degree}"], build)

    def mq_yukawa(self, terms: int) -> Report:
        def build(report: Report):
            report.payload["series"] = codec.to_json(yukawa(truncation=terms))
        return self.run(["mq", "yukawa", f"--terms={terms}"], build)

    def mq_tau1(self, terms: int) -> Report:
        def build(report: Report):
            numbers = instanton_numbers(yukawa(truncation=terms), terms)
            polynomial = tau1_polynomial(terms).polynomial_part()
            report.payload.update({
                "polynomial": {str(k): codec.format_fraction(c) for k, c in sorted(polynomial.items())},
                "q_part": codec.to_json(tau1_q_part(numbers, terms)),
            })
        return self.run(["mq", "tau1", f"--terms={terms}"], build)

    def mq_verify_tau(self, mode: str = "all", terms: int = 10) -> Report:
        def build(report: Report):
            if mode in ("all", "symbolic"):
                odes = verify_transversality_odes(terms)
                report.check("d2 tau1 / d tau0^2 = Y", odes.yukawa_ok)
                report.check("d tau2 / d tau0 = tau1 - tau0 tau3", odes.tau2_ok)
                if odes.first_mismatch:
                    report.payload["mismatch"] = list(odes.first_mismatch)
            check = verify_tau_matrix(self.rng(), self.trials, mode)
            if mode in ("all", "symbolic"):
                report.check("tau^T Psi0^-T tau = Phi0 (symbolic)", check.symbolic_ok)
                report.add("rational polarization failures", check.rational_failures, 0)
            if mode in ("all", "numeric"):
                report.add("connection vs closed form", check.connection_residual, TAU_CONNECTION_TOL)
                report.add("Griffiths entries", check.griffiths_residual, TAU_CONNECTION_TOL)
                report.check("A(1,2) survives the Griffiths constraints", check.griffiths_nonzero > 1e-3)
            report.payload["mode"] = mode
        return self.run(["mq", "verify-tau", f"--mode={mode}"], build)

    # ---------------------------------------------------------- selfcheck

    def selfcheck(self) -> Report:
        def build(report: Report):
            for name, step in (
                ("eisenstein", self._check_eisenstein),
                ("ramanujan", self._check_ramanujan),
                ("anomaly", self._check_anomaly),
                ("legendre", self._check_legendre),
                ("roundtrip", self._check_roundtrip),
                ("group", self._check_group),
                ("siegel", self._check_siegel),
                ("instantons", self._check_instantons),
                ("tau", self._check_tau),
                ("hodge odes", self._check_hodge_odes),
            ):
                try:
                    step(report)
                except QMFError as e:
                    logger.warning("selfcheck step %s raised %s", name, type(e).__name__)
                    report.check(f"{name}: raised {type(e).__name__}", False)
        return self.run(["selfcheck"], build)

    def _trials_for(self, key: str) -> int:
        return SELFCHECK_TRIALS[key] if self._trials_override is None else self._trials_override

    def _check_eisenstein(self, report: Report):
        n = 100
        bad = 0
        for k, b in EISENSTEIN_B.items():
            series = eisenstein_E(k, n)
            for m in range(1, n + 1):
                sigma = sum(d ** (2 * k - 1) for d in range(1, m + 1) if m % d == 0)
                if series[m] != b * sigma:
                    bad += 1
        report.add("eisenstein: coefficient mismatches through q^100", bad, 0)

    def _check_ramanujan(self, report: Report):
        for gen in (E2, E4, E6):
            defect = check_derivation(gen, 64)
            report.check(f"ramanujan: D {gen} exact through q^64", defect.is_zero())

    def _check_anomaly(self, report: Report):
        tau = 2j
        s = -1 / tau
        n = 60
        e2, e4, e6 = (eisenstein_E(k, n) for k in (1, 2, 3))
        anomaly = abs(e2(s) - tau ** 2 * e2(tau) - 12 * tau / (2j * math.pi))
        report.add("anomaly: E2(-1/tau) - tau^2 E2 - 12 tau/(2 pi i)", anomaly, ANOMALY_TOL)
        report.add("anomaly: E4(-1/tau) - tau^4 E4", abs(e4(s) - tau ** 4 * e4(tau)), ANOMALY_TOL)
        report.add("anomaly: E6(-1/tau) - tau^6 E6", abs(e6(s) - tau ** 6 * e6(tau)), ANOMALY_TOL)

    def _check_legendre(self, report: Report):
        rng = self.rng()
        worst = 0.0
        for _ in self._progress(self._trials_for("legendre"), "legendre"):
            t = random_elliptic_parameters(rng)
            worst = max(worst, period_data(t).legendre_residual)
        report.add("legendre: max |det(per) - 1|", worst, LEGENDRE_TOL)

    def _check_roundtrip(self, report: Report):
        for tau in (2j, 1j, 0.5 + 2j):
            result = inverse_roundtrip(tau, 60)
            report.add(f"roundtrip: relative j mismatch at {tau}", result.j_mismatch, ROUNDTRIP_TOL)

    def _check_group(self, report: Report):
        rng = self.rng()
        law = j_broken = disc_broken = 0
        for _ in self._progress(self._trials_for("group"), "group"):
            t = random_rational_parameters(rng)
            g, h = random_g0_pair(rng), random_g0_pair(rng)
            lhs = actions.elliptic_parameter_action(actions.elliptic_parameter_action(t, g), h)
            rhs = actions.elliptic_parameter_action(t, actions.compose_g0(g, h))
            law += lhs != rhs
            moved = actions.elliptic_parameter_action(t, g)
            j_broken += j_from_parameters(moved) != j_from_parameters(t)
            disc_broken += actions.discriminant(moved) != actions.discriminant(t) / g[0] ** 12
        report.add("group: law violations", law, 0)
        report.add("group: j changed", j_broken, 0)
        report.add("group: discriminant not scaled by k^-12", disc_broken, 0)

    def _check_siegel(self, report: Report):
        rng = self.rng()
        for genus in (1, 2, 3):
            frame = HodgeFrame.siegel(genus)
            worst = 0.0
            closed = True
            for _ in self._progress(self._trials_for("siegel"), f"siegel g={genus}"):
                b = random_siegel_point(genus, rng)
                a = actions.random_gamma(frame, rng)
                worst = max(worst, route_mismatch(b, a))
                closed &= riemann_check(b.act_left(a)).ok
                closed &= riemann_check(b.act_right(random_siegel_g0(genus, rng))).ok
            report.add(f"siegel: route mismatch g={genus}", worst, SIEGEL_ROUTE_TOL)
            report.check(f"siegel: Riemann relations closed g={genus}", closed)

    def _check_instantons(self, report: Report):
        fb = picard_fuchs_solve(10)
        report.check("instantons: Picard-Fuchs residual exactly zero",
                     all(r == 0 for r in picard_fuchs_residual(fb)))
        numbers = instanton_numbers(yukawa(fb), 10)
        report.check("instantons: n1..n3 = 2875, 609250, 317206375",
                     tuple(numbers[:3]) == EXPECTED_INSTANTONS)
        report.payload["instantons"] = [str(n) for n in numbers]

    def _check_tau(self, report: Report):
        odes = verify_transversality_odes(10)
        report.check("tau: d2 tau1 / d tau0^2 = Y through q^10", odes.yukawa_ok)
        report.check("tau: tau2 ODE", odes.tau2_ok)
        check = verify_tau_matrix(self.rng(), self._trials_for("tau"))
        report.check("tau: polarization identity", check.symbolic_ok and check.rational_failures == 0)
        report.add("tau: connection vs closed form", check.connection_residual, TAU_CONNECTION_TOL)
        report.add("tau: Griffiths entries", check.griffiths_residual, TAU_CONNECTION_TOL)

    def _check_hodge_odes(self, report: Report):
        rng = self.rng()
        for path in (EllipticPath(), TauPath()):
            t = path.default_point()
            v = rng.normal(size=path.dimension) + 1j * rng.normal(size=path.dimension)
            report.add(f"hodge odes: dF along {path.name}", f_ode_residual(path, t, v), ODE_TOL)
            report.add(f"hodge odes: dG along {path.name}", g_ode_residual(path, t, v), ODE_TOL)
            constancy = constancy_residual(path, t, v)
            report.add(f"hodge odes: A Phi0 + Phi0 A^T along {path.name}", constancy.skew, CONSTANCY_TOL)


# ---------------------------------------------------------- random inputs

def _is_standard_symplectic(frame: HodgeFrame) -> bool:
    h = frame.dimension
    if h % 2:
        return False
    j = actions.standard_symplectic(h // 2)
    psi = frame.psi0_exact
    return psi == j or psi == -j


def random_elliptic_parameters(rng: np.random.Generator, bound: float = 7.0,
                               min_discriminant: float = 1e-3) -> EllipticParameters:
    """Complex t with |t_i| <= 10 and |27 t3^2 - t2^3| >= min_discriminant."""
    while True:
        values = rng.uniform(-bound, bound, size=6)
        t = tuple(complex(values[2 * i], values[2 * i + 1]) for i in range(3))
        if abs(actions.discriminant(t)) >= min_discriminant:
            return EllipticParameters(*t)


def _random_fraction(rng: np.random.Generator, nonzero: bool = False) -> Fraction:
    while True:
        value = Fraction(int(rng.integers(-30, 31)), int(rng.integers(1, 12)))
        if value or not nonzero:
            return value


def random_rational_parameters(rng: np.random.Generator):
    while True:
        t = tuple(_random_fraction(rng) for _ in range(3))
        if actions.discriminant(t) != 0:
            return t


def random_g0_pair(rng: np.random.Generator):
    return (_random_fraction(rng, nonzero=True), _random_fraction(rng))

