"""Command-line front end: ``madcap <command> [options]``."""
from __future__ import annotations

import argparse
import configparser
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import capacity
from .degradability import family_grid, region_map
from .errors import CptpViolation, OutOfRange, UnsupportedFamily
from .forms import HOLEVO_FAMILIES
from .io import ChannelFormatError, dumps_channel, fmt, load_channel, write_csv
from .lindblad import RateParams, kraus_consistency
from .madfamily import FREE_PARAMS, FamilyTag, family_channel

EXIT_OK, EXIT_VERIFY, EXIT_CPTP, EXIT_UNSUPPORTED, EXIT_IO = 0, 1, 2, 3, 4

DEFAULTS = {"quantity": "quantum", "grid": 0.05, "out": "-", "seed": 0, "tol": None,
            "t": 1.0, "family": None, "p1": None, "p2": None, "p3": None, "channel": None}
FLOATS = {"grid", "tol", "t", "p1", "p2", "p3"}
SWEEP_HEADER = ["family", "p1", "p2", "p3", "quantity", "value", "status",
                "alpha", "beta", "gamma", "delta"]
DEG_HEADER = ["p1", "p2", "p3", "degradable", "antidegradable", "min_choi_eig_deg", "min_choi_eig_anti"]


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def threads() -> int:
    env = os.environ.get("MADCAP_THREADS", "")
    try:
        n = int(env)
    except ValueError:
        n = os.cpu_count() or 1
    return max(n, 1)


def _parser():
    p = argparse.ArgumentParser(prog="madcap", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, family=True, params=True):
        sp.add_argument("--config", help="INI file with a [madcap] section; flags win")
        if family:
            sp.add_argument("--family", choices=[t.value for t in FamilyTag])
        if params:
            for name in ("p1", "p2", "p3"):
                sp.add_argument(f"--{name}", type=float)
        sp.add_argument("--tol", type=float)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--out")

    quantities = sorted(capacity.QUANTITIES)
    sp = sub.add_parser("capacity", help="capacity of one family member")
    common(sp)
    sp.add_argument("--quantity", choices=quantities)
    sp = sub.add_parser("sweep", help="capacity over the family grid, as CSV")
    common(sp, params=False)
    sp.add_argument("--quantity", choices=quantities)
    sp.add_argument("--grid", type=float)
    sp = sub.add_parser("degradability", help="degradability map over the family grid, as CSV")
    common(sp, params=False)
    sp.add_argument("--grid", type=float)
    sp = sub.add_parser("lindblad-check", help="Kraus map against the damping-basis evolution")
    common(sp, family=False, params=False)
    sp.add_argument("--grid", type=float, help="rate grid step; rates run over (0, 2]")
    sp.add_argument("--t", type=float, help="evolution time")
    sp = sub.add_parser("verify", help="run the invariant suite or certify a channel file")
    common(sp, family=False, params=False)
    sp.add_argument("--channel", help="channel file to certify instead of the suite")
    sp = sub.add_parser("export-channel", help="write a family member in the channel text format")
    common(sp)
    return p


def _settings(args):
    """Merge built-in defaults, the config file, then explicit flags."""
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        parser = configparser.ConfigParser()
        try:
            with open(args.config) as fh:
                parser.read_file(fh)
        except OSError as exc:
            raise CliError(f"cannot read config: {exc}", EXIT_IO) from None
        section = parser["madcap"] if parser.has_section("madcap") else parser.defaults()
        for key, raw in section.items():
            key = key.replace("-", "_").replace("grid_step", "grid")
            if key not in cfg:
                raise CliError(f"unknown config key {key!r}", EXIT_CPTP)
            try:
                cfg[key] = float(raw) if key in FLOATS else int(raw) if key == "seed" else raw
            except ValueError:
                raise CliError(f"config key {key!r} has a bad value {raw!r}", EXIT_CPTP) from None
    for key, val in vars(args).items():
        if val is not None and key in cfg:
            cfg[key] = val
    return cfg


def _family(cfg):
    if not cfg["family"]:
        raise CliError("--family is required", EXIT_CPTP)
    return FamilyTag.parse(cfg["family"])


def _free_params(tag, cfg):
    names = FREE_PARAMS[tag]
    free = {n: cfg[n] for n in names}
    if len(names) == 1 and free[names[0]] is None and cfg["p1"] is not None:
        free[names[0]] = cfg["p1"]
    missing = [n for n, v in free.items() if v is None]
    if missing:
        raise CliError(f"family {tag.value} needs --{' --'.join(missing)}", EXIT_CPTP)
    return free


def _check_quantity(tag, quantity):
    if quantity == "classical-upper" and tag not in HOLEVO_FAMILIES:
        raise UnsupportedFamily(f"classical-upper is not available for family {tag.value}")


def _argmax_fields(r):
    s = r.argmax
    return [fmt(s.alpha), fmt(s.beta), fmt(s.gamma), fmt(s.delta)] if s else ["", "", "", ""]


def cmd_capacity(cfg, out):
    tag = _family(cfg)
    _check_quantity(tag, cfg["quantity"])
    free = _free_params(tag, cfg)
    _, params = family_channel(tag, **free)
    r = capacity.QUANTITIES[cfg["quantity"]](tag, **free)
    lines = [f"family {tag.value}",
             f"params p1={fmt(params.p1)} p2={fmt(params.p2)} p3={fmt(params.p3)}",
             f"quantity {cfg['quantity']}",
             f"value {fmt(r.value)}",
             f"status {r.status.value}",
             f"region {r.region.value if r.region else 'n/a'}"]
    if r.argmax:
        a = r.argmax
        lines.append(f"argmax alpha={fmt(a.alpha)} beta={fmt(a.beta)} "
                     f"gamma={fmt(a.gamma)} delta={fmt(a.delta)}")
    if r.lower is not None and r.upper is not None:
        lines.append(f"bounds {fmt(r.lower)} {fmt(r.upper)}")
    lines += [f"note {n}" for n in r.notes]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def _sweep_row(tag, quantity, free):
    try:
        _, params = family_channel(tag, **free)
    except CptpViolation:
        return None
    r = capacity.QUANTITIES[quantity](tag, **free)
    return [tag.value, fmt(params.p1), fmt(params.p2), fmt(params.p3), quantity,
            fmt(r.value), r.status.value] + _argmax_fields(r)


def cmd_sweep(cfg, out):
    tag = _family(cfg)
    _check_quantity(tag, cfg["quantity"])
    grid = family_grid(tag, cfg["grid"])
    with ThreadPoolExecutor(max_workers=threads()) as ex:
        rows = list(ex.map(lambda f: _sweep_row(tag, cfg["quantity"], f), grid))
    write_csv(cfg["out"], SWEEP_HEADER, [r for r in rows if r is not None])
    return EXIT_OK


def cmd_degradability(cfg, out):
    tag = _family(cfg)
    tol = cfg["tol"] if cfg["tol"] is not None else 1e-8
    rows = []
    for params, rep in region_map(tag, cfg["grid"], tol, workers=threads()):
        rows.append([fmt(params.p1), fmt(params.p2), fmt(params.p3), rep.degradable.value,
                     rep.antidegradable.value, fmt(rep.min_choi_eig_deg), fmt(rep.min_choi_eig_anti)])
    write_csv(cfg["out"], DEG_HEADER, rows)
    return EXIT_OK


def cmd_lindblad_check(cfg, out):
    step = cfg["grid"] if cfg["grid"] != DEFAULTS["grid"] else 0.5
    tol = cfg["tol"] if cfg["tol"] is not None else 1e-9
    n = int(round(2.0 / step))
    rates = [round(k * step, 12) for k in range(1, n + 1)]
    combos = [(a, b, c) for a in rates for b in rates for c in rates if b + c > a]

    def one(g):
        return kraus_consistency(RateParams(*g, t=cfg["t"]), 20, seed=cfg["seed"])

    with ThreadPoolExecutor(max_workers=threads()) as ex:
        errs = list(ex.map(one, combos))
    rows = [[fmt(a), fmt(b), fmt(c), fmt(cfg["t"]), fmt(e)] for (a, b, c), e in zip(combos, errs)]
    write_csv(cfg["out"], ["gamma1", "gamma2", "gamma3", "t", "max_abs_error"], rows)
    return EXIT_OK if max(errs) <= tol else EXIT_VERIFY


def cmd_verify(cfg, out):
    from . import verify
    if cfg["channel"]:
        try:
            ch = load_channel(cfg["channel"])
        except (OSError, ChannelFormatError) as exc:
            raise CliError(f"cannot load channel: {exc}", EXIT_IO) from None
        checks, info = verify.certify_channel(ch)
        extra = [info]
    else:
        checks, extra = verify.run_suite(cfg["seed"]), []
    lines = [c.line() for c in checks] + extra
    passed = sum(c.passed for c in checks)
    lines.append(f"summary {passed}/{len(checks)} checks passed")
    text = "\n".join(lines) + "\n"
    if cfg["out"] in (None, "-"):
        out.write(text)
    else:
        with open(cfg["out"], "w", newline="\n") as fh:
            fh.write(text)
    return EXIT_OK if passed == len(checks) else EXIT_VERIFY


def cmd_export_channel(cfg, out):
    tag = _family(cfg)
    ch, _ = family_channel(tag, **_free_params(tag, cfg))
    text = dumps_channel(ch)
    if cfg["out"] in (None, "-"):
        out.write(text)
    else:
        with open(cfg["out"], "w", newline="\n") as fh:
            fh.write(text)
    return EXIT_OK


COMMANDS = {"capacity": cmd_capacity, "sweep": cmd_sweep, "degradability": cmd_degradability,
            "lindblad-check": cmd_lindblad_check, "verify": cmd_verify,
            "export-channel": cmd_export_channel}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _settings(args)
        return COMMANDS[args.command](cfg, sys.stdout)
    except CliError as exc:
        print(f"madcap: {exc}", file=sys.stderr)
        return exc.code
    except CptpViolation as exc:
        print(f"madcap: CPTP violation: {exc}", file=sys.stderr)
        return EXIT_CPTP
    except UnsupportedFamily as exc:
        print(f"madcap: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except OSError as exc:
        print(f"madcap: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (OutOfRange, ValueError) as exc:
        print(f"madcap: {exc}", file=sys.stderr)
        return EXIT_CPTP


if __name__ == "__main__":
    sys.exit(main())
