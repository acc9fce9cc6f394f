"""Command-line experiment runner emitting diff-able convergence reports.

Each experiment reproduces one cluster of checkable claims as a table with
fixed columns ``experiment,label,param,metric,value,expected,abs_error``.
Rows that carry an expected value also carry an internal tolerance; with
``--strict`` the process exits nonzero when any such row violates it.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import floer, gallery, lagrangian, linalg, topology
from .errors import FredlabError, InvalidConfig
from .gallery import FugledeSpec, fuglede_expected, fuglede_operator
from .topology import ALPHA_RAMP

CSV_COLUMNS = ("experiment", "label", "param", "metric", "value", "expected", "abs_error")

#: Boundary angles probed against the shooting oracle.
ORACLE_ANGLES = (0.5, 1.0, float(np.pi), 5.0)

#: Eigenvalues tracked around zero.
WINDOW = 5

#: Number of leading neighbour pairs priced out in the floer metric table.
NEIGHBOR_PAIRS = 4


@dataclass(frozen=True)
class ReportRow:
    experiment: str
    label: str
    param: str
    metric: str
    value: float
    expected: float | None = None
    tol: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        if self.expected is not None:
            object.__setattr__(self, "expected", float(self.expected))
        if self.tol is not None:
            object.__setattr__(self, "tol", float(self.tol))

    @property
    def abs_error(self):
        if self.expected is None:
            return None
        return abs(self.value - self.expected)

    @property
    def violates(self):
        return self.tol is not None and self.abs_error is not None and self.abs_error > self.tol


def report_to_csv(rows):
    lines = [",".join(CSV_COLUMNS)]
    for r in rows:
        expected = "" if r.expected is None else repr(r.expected)
        abs_error = "" if r.abs_error is None else repr(r.abs_error)
        lines.append(
            f"{r.experiment},{r.label},{r.param},{r.metric},{repr(r.value)},{expected},{abs_error}"
        )
    return "\n".join(lines) + "\n"


def report_to_json(rows):
    payload = [
        {
            "experiment": r.experiment,
            "label": r.label,
            "param": r.param,
            "metric": r.metric,
            "value": r.value,
            "expected": r.expected,
            "abs_error": r.abs_error,
        }
        for r in rows
    ]
    return json.dumps(payload, indent=2) + "\n"


def violations(rows):
    return [r for r in rows if r.violates]


def run_fuglede(n_list=(1, 2, 4, 8, 16), dim_factor=4):
    """Gap convergence against Riesz divergence for the flipped-diagonal family."""
    rows = []
    for n in n_list:
        if n < 1:
            raise InvalidConfig(f"flip index must be >= 1, got {n}")
        dim = dim_factor * n
        a_n = fuglede_operator(FugledeSpec(n, dim))
        a_0 = fuglede_operator(FugledeSpec(0, dim))
        expected = fuglede_expected(n)
        p_n, m_n = topology.resolvents_at_i(a_n)
        p_0, m_0 = topology.resolvents_at_i(a_0)
        label, param = f"n={n}", str(n)

        def row(metric, value, exp, tol=1e-8):
            rows.append(ReportRow("fuglede", label, param, metric, float(value), exp, tol))

        row("gap_branch_plus", linalg.operator_norm(p_n - p_0), expected.resolvent_branch)
        row("gap_branch_minus", linalg.operator_norm(m_n - m_0), expected.resolvent_branch)
        row("gamma", topology.gap_metric(a_n, a_0), 2.0 * expected.resolvent_branch)
        row("rho", topology.riesz_metric(a_n, a_0), expected.rho)
        alpha = linalg.operator_norm(a_n.apply(ALPHA_RAMP) - a_0.apply(ALPHA_RAMP))
        row("alpha_dist", alpha, expected.alpha_dist)
    return rows


def parse_a_spec(text, grid_m):
    """Coefficient samples from a command-line spec: 0, const:p,q or samples:PATH."""
    if text.strip() == "0":
        return np.zeros(grid_m + 1, dtype=complex)
    if text.startswith("const:"):
        try:
            p_str, q_str = text[len("const:") :].split(",")
            return np.full(grid_m + 1, float(p_str) + 1j * float(q_str))
        except ValueError as exc:
            raise InvalidConfig(f"bad constant coefficient spec {text!r}") from exc
    if text.startswith("samples:"):
        path = text[len("samples:") :]
        data = np.loadtxt(path, ndmin=2)
        if data.shape != (grid_m + 1, 2):
            raise InvalidConfig(
                f"coefficient file must hold {grid_m + 1} rows of (re, im), got {data.shape}"
            )
        return data[:, 0] + 1j * data[:, 1]
    raise InvalidConfig(f"unrecognized coefficient spec {text!r}")


def run_floer(grid_m=400, s_count=128, a_spec="0"):
    """Oracle agreement, spectral flow and neighbour metric moduli for the family."""
    if grid_m < 8 or s_count < 8:
        raise InvalidConfig("need grid >= 8 and s-count >= 8")
    samples = parse_a_spec(a_spec, grid_m)
    coeff_is_zero = not np.any(samples)
    rows = []

    for s in ORACLE_ANGLES:
        cfg = floer.FloerConfig(samples, s, grid_m)
        w = floer.floer_spectrum(floer.assemble_floer_operator(cfg), WINDOW)
        roots = floer.shooting_eigenvalues(cfg, (float(w[0]) - 0.75, float(w[-1]) + 0.75))
        label, param = f"s={s:.4f}", f"{s!r}"
        for i, lam in enumerate(w):
            expected = float(roots[np.argmin(np.abs(roots - lam))]) if roots.size else None
            rows.append(
                ReportRow(
                    "floer", label, param, f"eig_near0_{i}", float(lam), expected, 1e-2
                )
            )

    sweep = np.linspace(0.0, 2.0 * np.pi, s_count)
    family = [
        floer.assemble_floer_operator(floer.FloerConfig(samples, float(s), grid_m))
        for s in sweep
    ]
    flow = floer.spectral_flow(family, WINDOW)
    rows.append(
        ReportRow(
            "floer",
            "sweep 0..2pi",
            str(s_count),
            "spectral_flow",
            float(flow),
            2.0 if coeff_is_zero else None,
            0.0,
        )
    )

    pairs = min(NEIGHBOR_PAIRS, s_count - 1)
    base = floer.FloerConfig(samples, float(sweep[0]), grid_m)
    d0 = floer.boundary_coefficient_operator(base)
    normalized = [
        floer.mass_normalized(family[k]) for k in range(pairs + 1)
    ]
    for k in range(pairs):
        s_a, s_b = float(sweep[k]), float(sweep[k + 1])
        label = f"s={s_a:.4f}->{s_b:.4f}"
        param = f"{s_b - s_a!r}"
        nu = floer.nu_metric(
            floer.boundary_projector(s_a), floer.boundary_projector(s_b), d0
        )
        rows.append(ReportRow("floer", label, param, "nu_neighbor", float(nu)))
        rows.append(
            ReportRow(
                "floer", label, param, "rho_neighbor",
                topology.riesz_metric(normalized[k], normalized[k + 1]),
            )
        )
        rows.append(
            ReportRow(
                "floer", label, param, "gamma_neighbor",
                topology.gap_metric(normalized[k], normalized[k + 1]),
            )
        )
    return rows


def run_graph(dim=20, trials=100, seed=7):
    """Graph-subspace oracles plus joint gap convergence of graphs and operators."""
    if dim < 1 or trials < 1:
        raise InvalidConfig("need positive dim and trials")
    rng = np.random.default_rng(seed)
    worst_proj = worst_lagr = worst_susp = 0.0
    worst_kernel = 0
    for _ in range(trials):
        n = int(rng.integers(2, dim + 1))
        zeros = int(rng.integers(0, min(3, n)))
        spectrum = np.concatenate(
            [np.zeros(zeros), rng.uniform(0.5, 4.0, n - zeros) * rng.choice([-1, 1], n - zeros)]
        )
        a = gallery.random_with_spectrum(spectrum, seed=int(rng.integers(1 << 30)))
        s = lagrangian.graph_subspace(a)
        p = linalg.projection_from_basis(s)
        worst_proj = max(
            worst_proj, linalg.operator_norm(p - lagrangian.graph_projection_formula(a))
        )
        j = lagrangian.SymplecticDoubling(n).complex_structure()
        worst_lagr = max(
            worst_lagr, linalg.operator_norm(j @ p @ j.T - (np.eye(2 * n) - p))
        )
        meet, _ = linalg.subspace_meet_dims(
            lagrangian.SymplecticDoubling(n).horizontal(), s
        )
        worst_kernel = max(worst_kernel, abs(meet - zeros))
        w = lagrangian.suspension(rng.standard_normal((n, n))).decomposition.eigenvalues
        worst_susp = max(worst_susp, float(np.max(np.abs(w + w[::-1]))))

    rows = [
        ReportRow("graph", "suite", str(trials), "qr_vs_blockformula_max", worst_proj, 0.0, 1e-10),
        ReportRow("graph", "suite", str(trials), "lagrangian_residual_max", worst_lagr, 0.0, 1e-10),
        ReportRow(
            "graph", "suite", str(trials), "kernel_dim_mismatch_max", float(worst_kernel), 0.0, 0.0
        ),
        ReportRow(
            "graph", "suite", str(trials), "suspension_symmetry_max", worst_susp, 0.0, 1e-10
        ),
    ]

    threshold = 1e-3
    agree = True
    for n in (1, 2, 4, 8, 16):
        a_n = fuglede_operator(FugledeSpec(n, 4 * n))
        a_0 = fuglede_operator(FugledeSpec(0, 4 * n))
        delta, gamma = lagrangian.kato_consistency(a_n, a_0)
        agree = agree and ((delta < threshold) == (gamma < threshold))
        rows.append(ReportRow("graph", f"n={n}", str(n), "delta_graphs", delta))
        rows.append(ReportRow("graph", f"n={n}", str(n), "gamma", gamma))
    rows.append(
        ReportRow("graph", "kato", "1e-3", "joint_below_threshold_match", float(agree), 1.0, 0.0)
    )
    return rows


def run_perturb(dim=20, steps=10, seed=7):
    """Riesz distance along a schedule of shrinking relatively bounded perturbations."""
    if dim < 1 or steps < 1:
        raise InvalidConfig("need positive dim and steps")
    base = gallery.random_selfadjoint(dim, seed=seed, spectrum_range=(-5.0, 5.0))
    schedule = [0.5**n for n in range(1, steps + 1)]
    family = gallery.perturbation_family(base, seed=seed + 1, schedule=schedule)
    rhos = [
        topology.riesz_metric(family.perturbed(k), base) for k in range(len(schedule))
    ]
    rows = [
        ReportRow("perturb", f"n={n}", repr(c), "rho", rho)
        for n, (c, rho) in enumerate(zip(schedule, rhos), start=1)
    ]
    decreasing = all(a > b for a, b in zip(rhos, rhos[1:]))
    rows.append(
        ReportRow("perturb", "trend", str(steps), "rho_strictly_decreasing", float(decreasing), 1.0, 0.0)
    )
    rows.append(ReportRow("perturb", "final", str(steps), "rho_final", rhos[-1], 0.0, 1e-3))
    return rows


def run_identities(trials=100, seed=7):
    """Resolvent identities of the bounded transform over random operators."""
    if trials < 1:
        raise InvalidConfig("need positive trials")
    rng = np.random.default_rng(seed)
    worst_plus = worst_minus = worst_inv = worst_eigs = 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 51))
        a = gallery.random_selfadjoint(
            n, seed=int(rng.integers(1 << 30)), spectrum_range=(-8.0, 8.0)
        )
        psi = topology.riesz_map(a)
        f = a.apply(lambda lam: 1.0 / np.sqrt(1.0 + lam * lam))
        f2 = a.apply(lambda lam: 1.0 / (1.0 + lam * lam))
        plus, minus = topology.resolvents_at_i(a)
        worst_plus = max(worst_plus, linalg.operator_norm(plus - (f @ psi - 1j * f2)))
        worst_minus = max(worst_minus, linalg.operator_norm(minus - (-f @ psi - 1j * f2)))
        worst_inv = max(
            worst_inv, linalg.operator_norm(f2 - (np.eye(n) - psi @ psi))
        )
        psi_eigs = np.sort(linalg.sym_eig(psi).eigenvalues)
        mapped = np.sort(topology.bounded_transform_scalar(a.decomposition.eigenvalues))
        worst_eigs = max(worst_eigs, float(np.max(np.abs(psi_eigs - mapped))))
    label = "suite"
    return [
        ReportRow("identities", label, str(trials), "resolvent_plus_identity_max", worst_plus, 0.0, 1e-10),
        ReportRow("identities", label, str(trials), "resolvent_minus_identity_max", worst_minus, 0.0, 1e-10),
        ReportRow("identities", label, str(trials), "inverse_square_identity_max", worst_inv, 0.0, 1e-10),
        ReportRow("identities", label, str(trials), "riesz_eigenvalue_map_max", worst_eigs, 0.0, 1e-12),
    ]


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="fredlab",
        description="Operator-topology experiments: metric comparisons, graph "
        "subspaces and boundary-value families at desk scale.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument(
        "--strict", action="store_true", help="exit 1 if any row violates its tolerance"
    )
    common.add_argument("--seed", type=int, default=7)

    sub = parser.add_subparsers(dest="experiment", required=True)

    p = sub.add_parser("fuglede", parents=[common], help="gap vs Riesz on the flipped family")
    p.add_argument("--n-list", default="1,2,4,8,16")
    p.add_argument("--dim-factor", type=int, default=4)

    p = sub.add_parser("floer", parents=[common], help="boundary value family experiments")
    p.add_argument("--grid", type=int, default=400)
    p.add_argument("--s-count", type=int, default=128)
    p.add_argument("--a", default="0", help="coefficient: 0, const:p,q or samples:PATH")

    p = sub.add_parser("graph", parents=[common], help="graph-subspace oracle suite")
    p.add_argument("--dim", type=int, default=20)
    p.add_argument("--trials", type=int, default=100)

    p = sub.add_parser("perturb", parents=[common], help="relative-bound perturbation trend")
    p.add_argument("--dim", type=int, default=20)
    p.add_argument("--trials", type=int, default=10, help="number of schedule steps")

    p = sub.add_parser("identities", parents=[common], help="bounded-transform identity suite")
    p.add_argument("--trials", type=int, default=100)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.experiment == "fuglede":
            n_list = tuple(int(x) for x in args.n_list.split(","))
            rows = run_fuglede(n_list=n_list, dim_factor=args.dim_factor)
        elif args.experiment == "floer":
            rows = run_floer(grid_m=args.grid, s_count=args.s_count, a_spec=args.a)
        elif args.experiment == "graph":
            rows = run_graph(dim=args.dim, trials=args.trials, seed=args.seed)
        elif args.experiment == "perturb":
            rows = run_perturb(dim=args.dim, steps=args.trials, seed=args.seed)
        else:
            rows = run_identities(trials=args.trials, seed=args.seed)
    except (FredlabError, ValueError, OSError) as exc:
        print(f"fredlab: {exc}", file=sys.stderr)
        return 2

    text = report_to_csv(rows) if args.format == "csv" else report_to_json(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    bad = violations(rows)
    if bad and args.strict:
        for r in bad:
            print(
                f"fredlab: tolerance violation {r.metric} ({r.label}): "
                f"|{r.value!r} - {r.expected!r}| > {r.tol!r}",
                file=sys.stderr,
            )
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
