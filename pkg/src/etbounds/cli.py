"""Command-line front end.

Exit codes: 0 success, 2 argument error, 3 no root, 4 irrelevant energy,
5 reference-file error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Sequence

from . import models
from .core import (
    BoundCharacter,
    IrrelevantEnergyError,
    NoRootError,
    Statistics,
    q_from_occupations,
    q_ground,
)
from .expr import ExprError
from .oracle import Boundary, GridSpec, OracleError, refine
from .solver import (
    CustomKinetic,
    CustomPotential,
    NonRelativistic,
    PowerLawSum,
    SolverConfig,
    solve_et,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_ROOT = 3
EXIT_IRRELEVANT = 4
EXIT_REFERENCE = 5

PAPER_INV_MASS = 43.281307
CALOGERO_COLUMNS = ["N", "g_prime", "E_exact", "E_et", "delta_c", "delta_limit"]
GAUSS_COLUMNS = ["N", "a", "V_g", "Y", "W0_Y", "E_et_K", "status"]
REFERENCE_COLUMNS = ["model", "N", "a", "e_ref_K"]


class UsageError(Exception):
    pass


class ReferenceFileError(Exception):
    pass


# -- formatting ----------------------------------------------------------

def fmt(x) -> str:
    """12 significant digits, trailing zeros dropped, scientific outside [1e-4, 1e6)."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    x = float(x)
    if x == 0.0:
        return "0"
    if not math.isfinite(x):
        return repr(x)
    if abs(x) >= 1e6 or abs(x) < 1e-4:
        mant, exp = f"{x:.11e}".split("e")
        if "." in mant:
            mant = mant.rstrip("0").rstrip(".")
        return f"{mant}e{int(exp):+03d}"
    s = f"{x:.12g}"
    if "e" in s:  # .12g can still pick exponent form near 1e-4 after rounding
        s = f"{x:.12f}".rstrip("0").rstrip(".")
    return s


def _json_value(x):
    if x is None or x == "":
        return None
    if isinstance(x, (str, bool)):
        return x
    if isinstance(x, int):
        return x
    return float(fmt(x))


def _emit(rows: list[dict], columns: list[str], as_json: bool, out) -> None:
    if as_json:
        records = [{c: _json_value(r.get(c)) for c in columns} for r in rows]
        out.write(json.dumps(records, indent=1) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([fmt(r.get(c)) for c in columns])
    out.write(buf.getvalue())


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="ascii", newline=""), True


# -- argument helpers ----------------------------------------------------

def _params(items: Sequence[str] | None) -> dict[str, float]:
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"--param expects NAME=VALUE, got {item!r}")
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"--param {name}: {value!r} is not a number") from None
    return out


def _int_list(text: str) -> list[int]:
    """Comma list of integers and inclusive ranges ``a:b``."""
    values = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ":" in part:
                a, b = part.split(":")
                values.extend(range(int(a), int(b) + 1))
            elif part:
                values.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _float_list(text: str) -> list[float]:
    try:
        values = [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _need(params: dict, *names):
    missing = [n for n in names if n not in params]
    if missing:
        raise UsageError(f"missing --param {', '.join(missing)}")
    return [params[n] for n in names]


def _gaussian_params(args, params: dict) -> models.GaussianParams:
    if args.V0 is not None or args.a is not None:
        if args.V0 is None or args.a is None:
            raise UsageError("--V0 and --a go together")
        inv_mass = args.inv_mass if args.inv_mass is not None else 1.0 / params.get("m", 1.0 / PAPER_INV_MASS)
        return models.GaussianParams.from_v0(inv_mass, args.V0, args.a)
    m = 1.0 / args.inv_mass if args.inv_mass is not None else params.get("m", 1.0)
    v_g, a = _need(params, "v_g", "a")
    return models.GaussianParams(m, v_g, a)


def _calogero_params(params: dict) -> models.CalogeroParams:
    m = params.get("m", 1.0)
    omega = params.get("omega", 1.0)
    if "g_prime" in params:
        return models.CalogeroParams.from_g_prime(params["g_prime"], m, omega)
    (g,) = _need(params, "g")
    return models.CalogeroParams(m, omega, g)


def _mass(args, params: dict) -> float:
    if args.inv_mass is not None:
        return 1.0 / args.inv_mass
    return params.get("m", 1.0)


def _power_terms(items):
    terms = []
    for item in items or []:
        try:
            c, e = (float(v) for v in item.split(","))
        except ValueError:
            raise UsageError(f"--term expects COEF,EXPONENT, got {item!r}") from None
        terms.append((c, e))
    if not terms:
        raise UsageError("power-law model needs at least one --term")
    return terms


def _system(args, params: dict):
    """Kinetic law and pair potential described by the arguments."""
    model = args.model
    if model is None:
        model = "custom" if args.potential or args.builtin_none else None
    if model is None:
        raise UsageError("choose --model or give --potential")
    if model == "calogero":
        p = _calogero_params(params)
        return p.kinetic(), p.potential()
    if model == "gaussian":
        p = _gaussian_params(args, params)
        return p.kinetic(), p.potential()
    if model == "harmonic":
        k = params.get("k", 1.0)
        return NonRelativistic(1.0 / _mass(args, params)), PowerLawSum(((k, 2.0),))
    if model == "powerlaw":
        return NonRelativistic(1.0 / _mass(args, params)), PowerLawSum(tuple(_power_terms(args.term)))
    if not args.potential:
        raise UsageError("custom model needs --potential")
    potential = CustomPotential.from_text(args.potential, params)
    if args.kinetic:
        kinetic = CustomKinetic.from_text(args.kinetic, params)
    else:
        kinetic = NonRelativistic(1.0 / _mass(args, params))
    return kinetic, potential


def _add_system_args(p: argparse.ArgumentParser, models_: Sequence[str]) -> None:
    p.add_argument("--model", choices=models_, help="built-in model (default: custom when --potential is given)")
    p.add_argument("--kinetic", metavar="EXPR", help="kinetic energy T(p), variable p (default p^2/(2*m))")
    p.add_argument("--potential", metavar="EXPR", help="pair potential V(x), variable x")
    p.add_argument("--builtin-none", action="store_true", help="use the expressions, no built-in model")
    p.add_argument("--param", action="append", metavar="NAME=VALUE",
                   help="bind a parameter (model parameters: m, omega, g, g_prime, v_g, a, k)")
    p.add_argument("--term", action="append", metavar="COEF,EXP", help="power-law term c*x^e (powerlaw model)")
    p.add_argument("--inv-mass", type=float, help="inverse particle mass 1/m")
    p.add_argument("--V0", type=float, help="Gaussian strength; depth is V0/(sqrt(pi) a)")
    p.add_argument("--a", type=float, help="Gaussian range")


# -- commands ------------------------------------------------------------

def cmd_solve(args, out) -> int:
    params = _params(args.param)
    kinetic, potential = _system(args, params)
    n = args.N
    stats = Statistics.parse(args.stats)
    ground = q_ground(n, stats)
    if args.Q is not None and args.occ is not None:
        raise UsageError("give at most one of --Q and --occ")
    if args.occ is not None:
        q = q_from_occupations([int(v) for v in args.occ.split(",") if v.strip()], n)
    elif args.Q is not None:
        q = args.Q
    else:
        q = ground
    config = SolverConfig(
        x0_scan_min=args.scan_min,
        x0_scan_max=args.scan_max,
        scan_points=args.scan_points,
    )
    sol = solve_et(kinetic, potential, n, q, config)
    note = "" if q == ground else "no bound guarantee asserted (Q is not the ground-state value)"
    record = {
        "N": n,
        "Q": q,
        "x0": sol.x0,
        "p0": sol.p0,
        "E": sol.energy,
        "bound": str(sol.bound),
        "residual": sol.residual,
        "n_roots": sol.n_roots_found,
        "note": note,
    }
    if args.json:
        out.write(json.dumps({k: _json_value(v) for k, v in record.items()}, indent=1) + "\n")
    else:
        for k, v in record.items():
            if k == "note" and not v:
                continue
            out.write(f"{k} = {fmt(v)}\n")
    return EXIT_OK


def calogero_rows(n_values, g_primes, m=1.0, omega=1.0) -> list[dict]:
    rows = []
    for n in sorted(set(n_values)):
        for gp in sorted(set(g_primes)):
            p = models.CalogeroParams.from_g_prime(gp, m, omega)
            rows.append({
                "N": n,
                "g_prime": gp,
                "E_exact": models.calogero_exact(p, n),
                "E_et": models.calogero_et(p, n),
                "delta_c": models.calogero_delta(p, n),
                "delta_limit": models.calogero_delta_limit(gp),
            })
    return rows


def cmd_calogero_sweep(args, out) -> int:
    if min(args.N) < 2:
        raise UsageError("N values must be >= 2")
    if min(args.g_prime) < 0:
        raise UsageError("g' values must be >= 0")
    rows = calogero_rows(args.N, args.g_prime, args.m, args.omega)
    _emit(rows, CALOGERO_COLUMNS, args.json, out)
    return EXIT_OK


def gauss_rows(n_values, a_values, v0, inv_mass) -> list[dict]:
    rows = []
    for n in sorted(set(n_values)):
        for a in sorted(set(a_values)):
            p = models.GaussianParams.from_v0(inv_mass, v0, a)
            t = models.gaussian_et_terms(p, n)
            rows.append({
                "N": n,
                "a": a,
                "V_g": p.v_g,
                "Y": t.y,
                "W0_Y": t.w0,
                "E_et_K": t.energy,
                "status": "ok" if t.relevant else "irrelevant",
            })
    return rows


def cmd_gauss_sweep(args, out) -> int:
    if min(args.N) < 2:
        raise UsageError("N values must be >= 2")
    if min(args.a) <= 0 or args.V0 <= 0 or args.inv_mass <= 0:
        raise UsageError("a, V0 and the inverse mass must be positive")
    rows = gauss_rows(args.N, args.a, args.V0, args.inv_mass)
    _emit(rows, GAUSS_COLUMNS, args.json, out)
    return EXIT_OK


def _key(n, a) -> tuple:
    return int(n), fmt(float(a))


def read_reference(path: str) -> dict:
    """Parse a ``model,N,a,e_ref_K`` table into ``{(N, a): energy}``."""
    try:
        handle = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise ReferenceFileError(f"{path}: {exc.strerror}") from None
    table = {}
    with handle:
        rows = [(i, r) for i, r in enumerate(csv.reader(handle), start=1)
                if r and not r[0].lstrip().startswith("#")]
        if not rows:
            raise ReferenceFileError(f"{path}: empty reference file")
        lineno, header = rows[0]
        header = [h.strip() for h in header]
        energy_cols = [h for h in header if h.startswith("e_ref")]
        if energy_cols and energy_cols != ["e_ref_K"]:
            raise ReferenceFileError(f"{path}:{lineno}: unit mismatch, expected e_ref_K, found {energy_cols[0]}")
        if header != REFERENCE_COLUMNS:
            raise ReferenceFileError(f"{path}:{lineno}: header must be {','.join(REFERENCE_COLUMNS)}")
        for lineno, row in rows[1:]:
            if len(row) != 4:
                raise ReferenceFileError(f"{path}:{lineno}: expected 4 fields, got {len(row)}")
            model, n, a, e = (f.strip() for f in row)
            if model != "gaussian":
                raise ReferenceFileError(f"{path}:{lineno}: unsupported model {model!r}")
            try:
                key = _key(int(n), float(a))
                energy = float(e)
            except ValueError:
                raise ReferenceFileError(f"{path}:{lineno}: malformed number") from None
            if not math.isfinite(energy):
                raise ReferenceFileError(f"{path}:{lineno}: energy is not finite")
            if key in table:
                raise ReferenceFileError(f"{path}:{lineno}: duplicate entry for N={n}, a={a}")
            table[key] = energy
    return table


def _read_sweep(path: str) -> list[dict]:
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            if reader.fieldnames != GAUSS_COLUMNS:
                raise UsageError(f"{path}: not a gauss-sweep CSV")
            return list(reader)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def compare_rows(sweep: list[dict], reference: dict) -> list[dict]:
    rows = []
    for r in sweep:
        row = dict(r)
        e_ref = reference.get(_key(r["N"], r["a"]))
        row["e_ref"] = e_ref
        row["delta_g"] = None
        if e_ref is not None and r["E_et_K"] not in ("", None):
            try:
                row["delta_g"] = models.gaussian_delta(e_ref, float(r["E_et_K"]))
            except ValueError as exc:
                raise ReferenceFileError(f"N={r['N']}, a={r['a']}: {exc}") from None
        rows.append(row)
    return rows


def cmd_compare(args, out) -> int:
    reference = read_reference(args.reference)
    sweep = _read_sweep(args.sweep)
    rows = compare_rows(sweep, reference)
    for row in rows:
        row["N"] = int(row["N"])
        for c in ("a", "V_g", "Y", "W0_Y", "E_et_K"):
            row[c] = float(row[c]) if row[c] not in ("", None) else None
    _emit(rows, GAUSS_COLUMNS + ["e_ref", "delta_g"], args.json, out)
    return EXIT_OK


def _verdict(bound: BoundCharacter, e_et: float, e_oracle: float, err: float) -> str:
    diff = e_et - e_oracle
    if bound is BoundCharacter.UPPER_BOUND:
        return "upper bound holds" if diff > err else ("upper bound violated" if diff < -err else "inconclusive")
    if bound is BoundCharacter.LOWER_BOUND:
        return "lower bound holds" if diff < -err else ("lower bound violated" if diff > err else "inconclusive")
    if bound is BoundCharacter.EXACT:
        return "exact agreement" if abs(diff) <= max(err, 1e-6 * abs(e_oracle)) else "exact case disagrees"
    return "no bound guarantee"


def cmd_oracle(args, out) -> int:
    params = _params(args.param)
    if args.model is None and not args.potential:
        args.model = "harmonic"
    kinetic, potential = _system(args, params)
    m = kinetic.mass if isinstance(kinetic, NonRelativistic) else None
    if m is None:
        raise UsageError("the oracle needs the non-relativistic kinetic energy")
    if args.boundary is not None:
        boundary = Boundary(args.boundary)
    else:
        boundary = Boundary.HALF_LINE_DIRICHLET if args.model == "calogero" else Boundary.FULL_LINE
    if args.half_width is not None:
        grid = GridSpec(args.half_width, args.points, boundary)
    else:
        grid = GridSpec.for_potential(potential, args.points, boundary)
    energy, err = refine(potential, m, grid)
    record = {"E_oracle": energy, "error_estimate": err, "points": grid.points,
              "half_width": grid.half_width, "boundary": boundary.value}
    if args.check_et:
        # antisymmetric relative wavefunctions are the two-fermion states
        stats = Statistics.FERMION if boundary is Boundary.HALF_LINE_DIRICHLET else Statistics.BOSON
        q = q_ground(2, stats)
        sol = solve_et(kinetic, potential, 2, q)
        record.update({"E_et": sol.energy, "bound": str(sol.bound),
                       "verdict": _verdict(sol.bound, sol.energy, energy, err)})
    if args.json:
        out.write(json.dumps({k: _json_value(v) for k, v in record.items()}, indent=1) + "\n")
    else:
        for k, v in record.items():
            out.write(f"{k} = {fmt(v)}\n")
    return EXIT_OK


# -- parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etbounds",
        description="Envelope-theory ground-state energies for 1D N-body systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve the envelope equations once")
    _add_system_args(p, ["calogero", "gaussian", "harmonic", "powerlaw", "custom"])
    p.add_argument("-N", type=int, required=True, help="number of particles")
    p.add_argument("--stats", default="boson", choices=["boson", "fermion"])
    p.add_argument("--Q", type=float, help="explicit global quantum number")
    p.add_argument("--occ", help="comma-separated occupations n_1..n_{N-1}")
    p.add_argument("--scan-min", type=float)
    p.add_argument("--scan-max", type=float)
    p.add_argument("--scan-points", type=int, default=SolverConfig.scan_points)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("calogero-sweep", help="Calogero exact vs envelope energies over N and g'")
    p.add_argument("--N", type=_int_list, default=_int_list("2:100"), help="e.g. 2:100 or 3,5,20")
    p.add_argument("--g-prime", type=_float_list, default=[0.2, 1.0, 5.0])
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_calogero_sweep)

    p = sub.add_parser("gauss-sweep", help="Gaussian-well envelope bounds over N and a")
    p.add_argument("--N", type=_int_list, default=[3, 5, 20, 100])
    p.add_argument("--a", type=_float_list, default=[0.2, 0.5, 1.0])
    p.add_argument("--V0", type=float, default=10.0)
    p.add_argument("--inv-mass", type=float, default=PAPER_INV_MASS)
    p.add_argument("--json", action="store_true")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_gauss_sweep)

    p = sub.add_parser("compare", help="append reference energies and relative errors to a gauss sweep")
    p.add_argument("--sweep", required=True, help="CSV written by gauss-sweep")
    p.add_argument("--reference", required=True, help="CSV with header model,N,a,e_ref_K")
    p.add_argument("--json", action="store_true")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("oracle", help="two-body finite-difference ground state")
    _add_system_args(p, ["harmonic", "calogero", "gaussian", "powerlaw", "custom"])
    p.add_argument("--points", type=int, default=4001)
    p.add_argument("--half-width", type=float)
    p.add_argument("--boundary", choices=["full", "half"])
    p.add_argument("--check-et", action="store_true", help="compare with the N=2 envelope value")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out, close = _open_out(getattr(args, "output", None))
    try:
        return args.func(args, out)
    except (UsageError, ExprError, ValueError, OracleError) as exc:
        parser.print_usage(sys.stderr)
        print(f"etbounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoRootError as exc:
        print(f"etbounds: no root: {exc}", file=sys.stderr)
        return EXIT_NO_ROOT
    except IrrelevantEnergyError as exc:
        print(f"etbounds: irrelevant energy: {exc}", file=sys.stderr)
        return EXIT_IRRELEVANT
    except ReferenceFileError as exc:
        print(f"etbounds: reference file error: {exc}", file=sys.stderr)
        return EXIT_REFERENCE
    finally:
        if close:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
