"""Command-line front end.

Every subcommand prints what it built followed by verification lines that
are recomputed independently of the construction.  The exit status is 0 only
when every verification line passes.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .cr import apply, cr_basis, solve_preimage
from .errors import CRTangentsError, PreconditionError
from .gaussian import I
from .heisenberg import AlgebraicTarget, realize_algebraic_set
from .parser import parse_expression, parse_real
from .polynomial import Polynomial
from .sampling import (
    SampleSpec,
    emit_point_cloud,
    get_target,
    make_rng,
    read_point_cloud,
    sample_surface,
    sample_target,
)
from .serialize import dumps, read_embedding, read_spec, read_unitary, write_certificate, write_embedding
from .sphere import RationalEmbedding, certify_minimal_sphere, rotate_target, sphere_realize, transfer_target
from .surfaces import heisenberg_rho, psi_many
from .tangency import (
    GraphEmbedding,
    hadamard_scale,
    polynomial_scale,
    tangency_eval_many,
    webster_determinant,
)

EXIT_CODES = {"verification-failed": 1, "parse": 3, "precondition": 4, "io": 5}


class Session:
    """Collects output lines, verification results and the JSON payload."""

    def __init__(self, json_mode: bool):
        self.json_mode = json_mode
        self.payload: dict = {}
        self.checks: list[dict] = []
        self.human = sys.stderr if json_mode else sys.stdout

    def say(self, text: str = "") -> None:
        print(text, file=self.human)

    def show(self, key: str, value, label: str | None = None) -> None:
        self.payload[key] = str(value) if isinstance(value, Polynomial) else value
        self.say(f"{label or key} = {value}")

    def check(self, label: str, passed: bool, detail: str = "") -> None:
        passed = bool(passed)
        self.checks.append({"check": label, "passed": passed, "detail": detail})
        suffix = f"  ({detail})" if detail else ""
        self.say(f"[{'pass' if passed else 'FAIL'}] {label}{suffix}")

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c["passed"] for c in self.checks)

    def finish(self) -> int:
        code = 0 if self.passed else EXIT_CODES["verification-failed"]
        if self.json_mode:
            self.payload["checks"] = self.checks
            self.payload["passed"] = self.passed
            sys.stdout.write(dumps(self.payload))
        return code


def _out_dir(args) -> Path | None:
    if not getattr(args, "out", None):
        return None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _operator(rho: Polynomial, j: int):
    return cr_basis(rho)[j - 1]


def _sampled_B_matches(e: GraphEmbedding, B: Polynomial, pts: np.ndarray, tol: float = 1e-9):
    numeric = tangency_eval_many(e, pts)
    symbolic = B.evaluate_many(pts)
    scale = polynomial_scale(B, pts)
    err = float(np.max(np.abs(numeric - symbolic))) if len(pts) else 0.0
    return err <= tol * scale, f"max |det - B(z)| = {err:.3e} over {len(pts)} points, scale {scale:.3e}"


def _convention_ratio(e: GraphEmbedding, pts: np.ndarray, tol: float = 1e-9):
    """The Re/Im row system must give (i/2)^(n-1) times the paired determinant."""
    expected = (0.5j) ** (e.n - 1) * tangency_eval_many(e, pts)
    reim = tangency_eval_many(e, pts, convention="reim")
    scale = hadamard_scale(e, pts)
    err = float(np.max(np.abs(reim - expected) / scale))
    return err <= tol, f"max scaled difference {err:.3e} over {len(pts)} points"


def _components_match_formula(e: RationalEmbedding, pts: np.ndarray, tol: float = 1e-9):
    """(1 - z_n)^(2l+r) * G(psi(z)) evaluated directly, against the stored components."""
    n = e.n
    heis = psi_many(pts)
    G = [e.g] + [Polynomial.zbar(j, n) for j in range(1, n - 1)]
    factor = (1 - pts[:, -1]) ** e.clearing_exponent
    worst = 0.0
    for comp, g in zip(e.components, G):
        direct = factor * g.evaluate_many(heis)
        stored = comp.evaluate_many(pts)
        err = np.abs(direct - stored) / (1 + np.abs(direct))
        worst = max(worst, float(err.max()))
    return worst <= tol, f"max relative difference {worst:.3e} over {len(pts)} points"


def _sphere_points(n: int, count: int, seed: int, pole_buffer: float = 0.1) -> np.ndarray:
    spec = SampleSpec("sphere", n, count=count, seed=seed)
    rng = make_rng(seed)
    chunks, have = [], 0
    while have < count:
        batch = sample_surface(spec, rng)
        batch = batch[np.abs(1 - batch[:, -1]) >= pole_buffer]
        chunks.append(batch)
        have += len(batch)
    return np.vstack(chunks)[:count]


def _report_line(s: Session, cert, name: str) -> None:
    for note in cert.notes:
        s.say(f"note: {note}")
    for key, report in cert.reports.items():
        summ = report.summary
        s.check(
            f"{name} sampled report ({key})",
            report.passed,
            f"hits {summ.get('hits')}, misses {summ.get('misses')}, ambiguous {summ.get('ambiguous')}",
        )


def _decay_line(s: Session, decay: dict) -> None:
    values = ", ".join(f"{v:.3e}" for v in decay["abs_B"])
    s.check("north pole decay", decay["passed"], f"|B| = {values}; rate {decay['rate']:.3f}")


# -- subcommands -----------------------------------------------------------------

def cmd_solve(args, s: Session) -> None:
    p = parse_expression(args.p, args.n, args.real_coords)
    n = p.dimension
    if not 1 <= args.j <= n - 1:
        raise PreconditionError(f"need 1 <= j <= n-1, got j={args.j}, n={n}")
    f = solve_preimage(p, args.j, n)
    s.show("p", p)
    s.show("f", f)
    residual = apply(_operator(heisenberg_rho(n), args.j), f) - p
    s.check("L(f) - p = 0", residual.is_zero(), "" if residual.is_zero() else f"residual {residual}")
    bound = p.degree() + p.max_exponent(n, "anti") + 1
    s.check("deg f <= deg p + deg_zbn p + 1", f.degree() <= bound, f"{f.degree()} <= {bound}")


def _target_from_args(args) -> AlgebraicTarget:
    if args.p is not None:
        if args.q1 is not None or args.q2 is not None:
            raise PreconditionError("give either --p or --q1/--q2, not both")
        return AlgebraicTarget(args.n, parse_expression(args.p, args.n, args.real_coords))
    if args.q1 is None:
        raise PreconditionError("give --p or --q1 (and optionally --q2)")
    q1 = parse_real(args.q1, args.n)
    q2 = parse_real(args.q2, args.n) if args.q2 is not None else None
    return AlgebraicTarget.from_real(q1, q2, args.n)


def cmd_realize(args, s: Session) -> None:
    target = _target_from_args(args)
    spec = read_spec(args.verify) if args.verify else None
    e, cert = realize_algebraic_set(target, spec)
    n, p, f = target.n, target.p, e.components[0]
    s.show("p", p)
    s.show("f", f)
    s.show("B", cert.symbolic_locus)
    s.show("c", str(cert.convention_constant), "c (B = c*conj(p))")
    residual = apply(_operator(e.rho, n - 1), f) - p
    s.check("L(f) - p = 0", residual.is_zero())
    c = cert.convention_constant
    if c is None:
        s.check("B = c*conj(p) for a constant c", False, "no constant relates B and conj(p)")
    else:
        reim = webster_determinant(e, "reim")
        expected = p.conj().scale(c * (I / 2) ** (n - 1))
        s.check("Re/Im determinant - (i/2)^(n-1)*c*conj(p) = 0", (reim - expected).is_zero())
    _report_line(s, cert, "realize")
    out = _out_dir(args)
    if out:
        write_embedding(e, out / "embedding.json")
        write_certificate(cert, out / "certificate.json")
        s.say(f"wrote {out / 'embedding.json'} and {out / 'certificate.json'}")
    s.payload["certificate"] = cert.to_record()


def cmd_tangents(args, s: Session) -> None:
    e = read_embedding(args.embedding)
    s.payload["n"] = e.n
    s.payload["components"] = [str(c) for c in e.components]
    if args.spec:
        spec = read_spec(args.spec)
        pts = sample_surface(spec)
    elif e.surface == "heisenberg":
        pts = sample_surface(SampleSpec("heisenberg", e.n, count=args.count, seed=args.seed))
    elif e.surface == "sphere":
        pts = _sphere_points(e.n, args.count, args.seed)
    else:
        raise PreconditionError(f"pass --spec to sample a {e.surface} surface")
    if e.is_polynomial:
        B = webster_determinant(e)
        s.show("B", B)
        ok, detail = _sampled_B_matches(e, B, pts)
        s.check("numeric determinant = B at sampled points", ok, detail)
        return
    values = tangency_eval_many(e, pts)
    abs_B = np.abs(values)
    s.say(f"sampled |B| over {len(pts)} points: min {abs_B.min():.6e}, max {abs_B.max():.6e}")
    s.payload["samples"] = [
        {"point": [[z.real, z.imag] for z in pt], "B": [v.real, v.imag]} for pt, v in zip(pts, values)
    ]
    ok, detail = _convention_ratio(e, pts)
    s.check("Re/Im determinant = (i/2)^(n-1) * paired determinant", ok, detail)


def cmd_sphere_realize(args, s: Session) -> None:
    p = parse_expression(args.p, args.n, args.real_coords)
    if args.rotate:
        U = read_unitary(args.rotate, args.n)
        p = rotate_target(p, U)
        s.show("p_rotated", p, "p(Uz)")
    spec = read_spec(args.spec) if args.spec else None
    e, cert = sphere_realize(p, args.r, args.n, spec)
    n = e.n
    s.show("p", p)
    s.show("g", e.g)
    s.say(f"l = {e.l}, clearing exponent = {e.clearing_exponent}")
    s.payload.update(l=e.l, clearing_exponent=e.clearing_exponent)
    for k, comp in enumerate(e.components, start=1):
        s.show(f"F{k}", str(comp))
    p_heis = transfer_target(p, n)
    residual = apply(_operator(heisenberg_rho(n), n - 1), e.g) - p_heis
    s.check("L(g) - (p o phi numerator) = 0", residual.is_zero())
    pts = _sphere_points(n, 200, args.seed if spec is None else spec.seed)
    ok, detail = _components_match_formula(e, pts)
    s.check("components = (1 - z_n)^(2l+r) * G(psi(z))", ok, detail)
    _report_line(s, cert, "sphere")
    _decay_line(s, cert.north_pole)
    on = np.array([row["point"] for row in cert.reports["sphere"].rows if row["set"] == "on"])
    out = _out_dir(args)
    if out:
        write_embedding(e, out / "embedding.json")
        write_certificate(cert, out / "certificate.json")
        emit_point_cloud(on, out / "cloud.csv")
        s.say(f"wrote embedding.json, certificate.json and cloud.csv ({len(on)} points) to {out}")
    s.payload["certificate"] = cert.to_record()


def cmd_minimal_sphere(args, s: Session) -> None:
    spec = SampleSpec("sphere", args.n, count=args.count, seed=args.seed)
    e, cert = certify_minimal_sphere(args.n, args.r, spec)
    for k, comp in enumerate(e.components, start=1):
        s.show(f"F{k}", str(comp))
    ok, detail = _components_match_formula(e, _sphere_points(args.n, 200, args.seed))
    s.check("components = (1 - z_n)^(2l+r) * G(psi(z))", ok, detail)
    s.check("sampled min |B| > 0 away from the north pole", cert.checks["min_abs_B_positive"], cert.notes[0])
    _decay_line(s, cert.north_pole)
    out = _out_dir(args)
    if out:
        write_embedding(e, out / "embedding.json")
        write_certificate(cert, out / "certificate.json")
        s.say(f"wrote embedding.json and certificate.json to {out}")
    s.payload["certificate"] = cert.to_record()


def cmd_sample(args, s: Session) -> None:
    spec = read_spec(args.spec)
    if spec.target:
        pts = sample_target(spec.target, spec)
    else:
        pts = sample_surface(spec)
    path = emit_point_cloud(pts, args.out)
    s.say(f"wrote {len(pts)} points to {path}")
    s.payload.update(points=len(pts), path=str(path), spec=spec.to_record())
    back = read_point_cloud(path)
    residual = float(spec.hypersurface().residuals(back).max())
    s.check("emitted points lie on the surface", residual <= spec.surface_tol, f"max |rho| = {residual:.3e}")
    if spec.target:
        p = get_target(spec.target, spec.surface).polynomial(spec.n)
        worst = float(np.abs(p.evaluate_many(back)).max())
        s.check("emitted points lie on the target", worst <= spec.zero_tol, f"max |p| = {worst:.3e}")


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crtangents", description="Embeddings with prescribed complex tangents, with verification."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", parents=[common], help="solve L_{jn} f = p on the Heisenberg group")
    sp.add_argument("--n", type=int)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--p", required=True)
    sp.add_argument("--real-coords", action="store_true")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("realize", parents=[common], help="realize {p = 0} as complex tangents")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p")
    sp.add_argument("--q1")
    sp.add_argument("--q2")
    sp.add_argument("--real-coords", action="store_true")
    sp.add_argument("--verify", metavar="SPEC", help="sample spec (JSON) for the report")
    sp.add_argument("--out", metavar="DIR")
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("tangents", parents=[common], help="tangency determinant of an embedding file")
    sp.add_argument("--embedding", required=True)
    sp.add_argument("--spec")
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_tangents)

    sp = sub.add_parser("sphere-realize", parents=[common], help="transfer a realization to the sphere")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", required=True)
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--rotate", metavar="UFILE")
    sp.add_argument("--real-coords", action="store_true")
    sp.add_argument("--spec")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", metavar="DIR")
    sp.set_defaults(func=cmd_sphere_realize)

    sp = sub.add_parser("minimal-sphere", parents=[common], help="sphere embedding tangent only at the north pole")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--count", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", metavar="DIR")
    sp.set_defaults(func=cmd_minimal_sphere)

    sp = sub.add_parser("sample", parents=[common], help="write a point cloud for a sample spec")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--out", required=True, metavar="CSV")
    sp.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    s = Session(args.json)
    try:
        args.func(args, s)
    except CRTangentsError as exc:
        return _fail(s, exc.category, str(exc))
    except OSError as exc:
        return _fail(s, "io", str(exc))
    except (ValueError, ZeroDivisionError) as exc:
        return _fail(s, "precondition", str(exc))
    return s.finish()


def _fail(s: Session, category: str, message: str) -> int:
    print(f"error[{category}]: {message}", file=sys.stderr)
    if s.json_mode:
        sys.stdout.write(dumps({"error": {"category": category, "message": message}, "passed": False}))
    return EXIT_CODES[category]


if __name__ == "__main__":
    sys.exit(main())
