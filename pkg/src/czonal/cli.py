"""Command-line front end: ``czonal <command> [flags]``.

Exit codes: 0 success, 1 invalid input, 2 identity suite failed, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field, fields
from typing import Optional

from . import expansion as ex
from . import polyalg as pa
from . import quadrature as qd
from . import zonal as zn
from .verify import report, run_suite

log = logging.getLogger("czonal")

COMMANDS = ("decompose", "disc-poly", "expand", "poisson-szego", "plane-wave", "quad", "verify")
EXIT_OK, EXIT_INVALID, EXIT_SUITE, EXIT_IO = 0, 1, 2, 3


class ValidationError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    n: int = 2
    max_bidegree: int = 10
    p: Optional[int] = None
    q: Optional[int] = None
    r: list = field(default_factory=lambda: [0.5])
    radial_points: int = 16
    angular_points: int = 33
    profile: Optional[str] = None
    input: Optional[str] = None
    out: Optional[str] = None
    format: str = "json"
    tolerance: Optional[float] = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        if not isinstance(self.n, int) or self.n < 2:
            raise ValidationError("n must be an integer >= 2")
        if self.max_bidegree < 0:
            raise ValidationError("max bidegree must be >= 0")
        if self.format not in ("json", "csv"):
            raise ValidationError("format must be json or csv")
        if self.radial_points < 1 or self.angular_points < 1:
            raise ValidationError("rule sizes must be positive")
        for v in (self.p, self.q):
            if v is not None and v < 0:
                raise ValidationError("p and q must be non-negative")
        if self.tolerance is not None and not self.tolerance > 0:
            raise ValidationError("tolerance must be positive")

    @classmethod
    def from_mapping(cls, data: dict) -> "JobConfig":
        known = {f.name for f in fields(cls)}
        extra = sorted(set(data) - known)
        if extra:
            raise ValidationError(f"unknown config fields: {', '.join(extra)}")
        return cls(**data)


# -- commands -------------------------------------------------------------------


def _read_text(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(header)
    out.writerows(rows)
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def cmd_decompose(cfg: JobConfig) -> str:
    if cfg.format != "json":
        raise ValidationError("decompose only writes JSON")
    try:
        P = pa.BiPoly.from_json(_read_text(cfg.input))
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        raise ValidationError(f"bad polynomial JSON: {e}") from e
    return _dump(pa.canonical_decompose(P).to_dict())


def cmd_disc_poly(cfg: JobConfig) -> str:
    alpha = cfg.n - 2
    if cfg.p is not None or cfg.q is not None:
        cells = [(cfg.p or 0, cfg.q or 0)]
    else:
        cells = [(p, q) for p in range(cfg.max_bidegree + 1) for q in range(cfg.max_bidegree + 1)]
    tables = [zn.disc_poly(p, q, alpha) for p, q in cells]
    if cfg.format == "csv":
        if len(tables) == 1:
            return zn.disc_poly_csv(tables[0])
        rows = [(t.p, t.q, j, c.numerator, c.denominator) for t in tables for j, c in enumerate(t.coeffs)]
        return _rows_csv(["p", "q", "j", "c_num", "c_den"], rows)
    return _dump({
        "alpha": alpha,
        "tables": [{"p": t.p, "q": t.q, "coeffs": [str(c) for c in t.coeffs]} for t in tables],
    })


def _profile(cfg: JobConfig) -> ex.ProfileTaylor:
    if cfg.profile and cfg.input:
        raise ValidationError("give either --profile or --input, not both")
    if cfg.profile:
        return ex.parse_profile(cfg.profile, cfg.n)
    if cfg.input:
        try:
            return ex.ProfileTaylor.from_dict(json.loads(_read_text(cfg.input)))
        except (KeyError, TypeError, json.JSONDecodeError) as e:
            raise ValidationError(f"bad Taylor table JSON: {e}") from e
    raise ValidationError("expand needs --profile or --input")


def cmd_expand(cfg: JobConfig) -> str:
    table = ex.expand_profile(_profile(cfg), cfg.n, cfg.max_bidegree)
    return table.to_csv() if cfg.format == "csv" else table.to_json() + "\n"


def _r_grid_rows(cfg: JobConfig, coef, lo_closed_hi: bool):
    rows = []
    for r in cfg.r:
        if r < 0 or (lo_closed_hi and r > 1):
            raise ValidationError(f"r={r} outside the allowed range")
        for s in range(cfg.max_bidegree + 1):
            for p in range(s + 1):
                rows.append((r, p, s - p, coef(r, p, s - p, cfg.n)))
    return rows


def cmd_poisson_szego(cfg: JobConfig) -> str:
    rows = _r_grid_rows(cfg, ex.poisson_szego_coefficient, True)
    if cfg.format == "csv":
        return _rows_csv(["r", "p", "q", "value"], [(r, p, q, repr(v)) for r, p, q, v in rows])
    return _dump({"n": cfg.n, "entries": [{"r": r, "p": p, "q": q, "value": v} for r, p, q, v in rows]})


def cmd_plane_wave(cfg: JobConfig) -> str:
    rows = _r_grid_rows(cfg, ex.plane_wave_coefficient, False)
    if cfg.format == "csv":
        return _rows_csv(["r", "p", "q", "re", "im"], [(r, p, q, repr(v.real), repr(v.imag)) for r, p, q, v in rows])
    return _dump({
        "n": cfg.n,
        "entries": [{"r": r, "p": p, "q": q, "re": v.real, "im": v.imag} for r, p, q, v in rows],
    })


def cmd_quad(cfg: JobConfig) -> str:
    if not cfg.profile:
        raise ValidationError("quad needs --profile")
    prof = ex.parse_profile(cfg.profile, cfg.n)
    rule = qd.build_disc_rule(cfg.n - 2, cfg.radial_points, cfg.angular_points)
    p, q = cfg.p or 0, cfg.q or 0
    val = qd.integral_coefficient(prof.value, p, q, cfg.n, rule)
    if cfg.format == "csv":
        return _rows_csv(["profile", "n", "p", "q", "re", "im"], [(cfg.profile, cfg.n, p, q, repr(val.real), repr(val.imag))])
    return _dump({
        "profile": cfg.profile, "n": cfg.n, "p": p, "q": q,
        "re": val.real, "im": val.imag,
        "rule": rule.to_dict(), "reduction": rule.reduction,
    })


HANDLERS = {
    "decompose": cmd_decompose,
    "disc-poly": cmd_disc_poly,
    "expand": cmd_expand,
    "poisson-szego": cmd_poisson_szego,
    "plane-wave": cmd_plane_wave,
    "quad": cmd_quad,
}


def _emit(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def run(cfg: JobConfig) -> int:
    try:
        cfg.validate()
        if cfg.command == "verify":
            results = run_suite(cfg.n, cfg.max_bidegree, cfg.tolerance)
            for r in results:
                print(r.line())
            rep = report(results)
            if cfg.out:
                _emit(_dump(rep), cfg.out)
            elif not rep["passed"]:
                sys.stdout.write(_dump(rep))
            return EXIT_OK if rep["passed"] else EXIT_SUITE
        _emit(HANDLERS[cfg.command](cfg), cfg.out)
        return EXIT_OK
    except OSError as e:
        log.error("I/O error: %s", e)
        return EXIT_IO
    except (ValueError, ArithmeticError, KeyError, ex.ConvergenceError) as e:
        log.error("%s", e)
        return EXIT_INVALID


# -- argument parsing ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are validation failures; 2 is reserved for the suite
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="czonal", description="Zonal harmonic expansions on the complex sphere.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="JSON file with JobConfig fields; flags override it")
    ap.add_argument("--n", type=int)
    ap.add_argument("--max-bidegree", "--max", dest="max_bidegree", type=int)
    ap.add_argument("--p", type=int)
    ap.add_argument("--q", type=int)
    ap.add_argument("--r", type=float, nargs="+")
    ap.add_argument("--radial-points", type=int)
    ap.add_argument("--angular-points", type=int)
    ap.add_argument("--profile")
    ap.add_argument("--input")
    ap.add_argument("--out")
    ap.add_argument("--format", choices=("json", "csv"))
    ap.add_argument("--tolerance", type=float)
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def config_from_args(args: argparse.Namespace) -> JobConfig:
    data: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValidationError("config file must hold a JSON object")
    flags = {k: v for k, v in vars(args).items() if k not in ("config", "verbose") and v is not None}
    for k, v in flags.items():
        if k in data and k != "command" and data[k] != v:
            log.warning("flag --%s=%s overrides config value %s", k.replace("_", "-"), v, data[k])
    data.update(flags)
    return JobConfig.from_mapping(data)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="czonal: %(levelname)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except OSError as e:
        log.error("I/O error: %s", e)
        return EXIT_IO
    except (ValueError, TypeError) as e:
        log.error("%s", e)
        return EXIT_INVALID
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
