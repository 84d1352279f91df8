"""Command-line front end: expand, convert, geodesic, verify."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import mpmath

from .cf_core import DigitSequence, rcf_expand, value_of_periodic
from .dual_mobius import fstar_orbit
from .errors import ModflowError, UnsupportedHead
from .farey_cf import farey_expand, farey_from_value
from .geodesics import (
    Geodesic,
    cutting_sequence_backward,
    cutting_sequence_from_rcf,
    cutting_sequence_geometric,
    lift_to_A,
    return_time,
    theorem1_decode,
    to_series_window,
    xi_eta,
)
from .lehner import lehner_expand, lehner_from_rcf
from .numeric import format_exact, parse_exact
from .sweeps import SUITES, SweepConfig, run_suite


@dataclass
class CommandResult:
    status: str
    payload: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in ("ok", "error"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "error" and not self.diagnostics:
            raise ValueError("an error result needs diagnostics")

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json(self) -> dict:
        return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}

    @classmethod
    def from_json(cls, doc: dict) -> "CommandResult":
        return cls(doc["status"], doc["payload"], list(doc["diagnostics"]))


def emit(doc) -> str:
    """Canonical JSON text: sorted keys, fixed separators."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def precision_bits() -> int:
    return int(os.environ.get("MODFLOW_PRECISION_BITS", "128"))


def _num(x) -> str:
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, 30)
    return format_exact(x)


def parse_rcf_text(text: str) -> DigitSequence:
    """'n0;n1,n2,...' with '|' before the period, or a trailing '...' repeating the last digit."""
    head_text, _, rest = text.partition(";")
    head = int(head_text.strip())
    rest = rest.strip()
    if "|" in rest:
        pre_text, per_text = rest.split("|", 1)
    elif rest.endswith("..."):
        digits = [t for t in rest[:-3].split(",") if t.strip()]
        pre_text, per_text = ",".join(digits[:-1]), digits[-1] if digits else ""
    else:
        pre_text, per_text = rest, ""

    def ints(s):
        out = [int(t) for t in s.split(",") if t.strip()]
        if any(n < 1 for n in out):
            raise ValueError("rcf digits must be positive")
        return tuple(out)

    return DigitSequence("rcf", ints(pre_text), ints(per_text), head)


# -- commands ------------------------------------------------------------------


def cmd_expand(system: str, value: str, max_digits: int = 10_000) -> CommandResult:
    x = parse_exact(value)
    diags = []
    if system == "rcf":
        seq = rcf_expand(x, max_digits)
    elif system == "lehner":
        seq = lehner_expand(x, max_digits)
    elif system == "farey":
        seq = farey_expand(x, max_digits)
    elif system == "fstar":
        seq, boundary = fstar_orbit(x, max_digits)
        if boundary:
            diags.append("orbit reached the carrier edge 1/2")
    else:
        raise ValueError(f"unknown system {system!r}")
    back = value_of_periodic(seq)
    return CommandResult(
        "ok",
        {"input": format_exact(x), "expansion": seq.to_json(), "value": format_exact(back), "round_trip": back == x},
        diags,
    )


def cmd_convert(to: str, rcf: str | None = None, value: str | None = None) -> CommandResult:
    if (rcf is None) == (value is None):
        raise ValueError("give exactly one of --rcf and --value")
    if rcf is not None:
        seq = parse_rcf_text(rcf)
        x = value_of_periodic(seq)
    else:
        x = parse_exact(value)
        seq = rcf_expand(x)
    if to == "lehner":
        if seq.head != 1:
            raise UnsupportedHead(f"Lehner conversion needs head 1, got {seq.head}")
        converted = lehner_from_rcf(seq.head, seq)
        direct = lehner_expand(x)
    elif to == "farey":
        converted = farey_from_value(x)
        direct = farey_expand(x)
    else:
        raise ValueError(f"unknown target {to!r}")
    agree = converted == direct
    payload = {
        "rcf": seq.to_json(),
        "value": format_exact(x),
        "converted": converted.to_json(),
        "direct": direct.to_json(),
        "agree": agree,
    }
    if not agree:
        return CommandResult("error", payload, ["converted word differs from direct expansion"])
    return CommandResult("ok", payload)


def cmd_geodesic(backward: str, forward: str, letters: int = 24) -> CommandResult:
    prec = precision_bits()
    g = Geodesic(parse_exact(backward), parse_exact(forward))
    lifted, h = lift_to_A(g)
    diags: list[str] = []
    payload: dict = {
        "geodesic": {"backward": format_exact(g.backward), "forward": format_exact(g.forward)},
        "lift": {"backward": format_exact(lifted.backward), "forward": format_exact(lifted.forward)},
        "witness": list(h.as_rows()[0] + h.as_rows()[1]),
    }
    fwd_letters = cutting_sequence_geometric(lifted, letters)
    bwd_letters = cutting_sequence_backward(lifted, letters)
    payload["letters"] = {"forward": fwd_letters, "backward": bwd_letters}
    try:
        window, _ = to_series_window(g)
        cs = cutting_sequence_from_rcf(window)
        payload["cutting_sequence"] = cs.to_json()
        fw, bw = theorem1_decode(cs)
        payload["theorem1"] = {"forward": fw.to_json(), "backward": bw.to_json()}
    except ModflowError as exc:
        diags.append(f"{type(exc).__name__}: {exc}")
    try:
        c = xi_eta(lifted, prec)
        payload["xi"] = {"x": _num(c.xi.x), "y2": _num(c.xi.y2)}
        payload["eta"] = {"x": _num(c.eta.x), "y2": _num(c.eta.y2)}
        payload["return_time"] = _num(return_time(lifted, prec))
    except ModflowError as exc:
        diags.append(f"{type(exc).__name__}: {exc}")
        payload["return_time"] = None
    return CommandResult("ok", payload, diags)


def cmd_verify(suite: str, samples: int, seed: int) -> CommandResult:
    res = run_suite(SweepConfig(suite, samples, seed))
    if res.ok:
        return CommandResult("ok", res.to_json())
    return CommandResult("error", res.to_json(), [f"first counterexample: {res.counterexample}"])


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modflow", description=__doc__)
    p.add_argument("--json", action="store_true", help="single-line canonical JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", help="expand an exact number")
    e.add_argument("--system", choices=["rcf", "lehner", "farey", "fstar"], required=True)
    e.add_argument("--value", required=True)
    e.add_argument("--max-digits", type=int, default=10_000)

    c = sub.add_parser("convert", help="RCF to Lehner or Farey, checked against direct expansion")
    c.add_argument("--to", choices=["lehner", "farey"], required=True)
    c.add_argument("--rcf")
    c.add_argument("--value")

    g = sub.add_parser("geodesic", help="code a geodesic on the modular surface")
    g.add_argument("--backward", required=True)
    g.add_argument("--forward", required=True)
    g.add_argument("--letters", type=int, default=24)

    v = sub.add_parser("verify", help="run a seeded verification sweep")
    v.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES)}")
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)

    for sp in (e, c, g, v):
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    return p


_VALUE_OPTIONS = ("--value", "--rcf", "--backward", "--forward")


def _glue_values(argv):
    """Attach values to their option so argparse accepts negatives like -2/3."""
    argv = list(sys.argv[1:] if argv is None else argv)
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _VALUE_OPTIONS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv=None) -> CommandResult:
    args = build_parser().parse_args(_glue_values(argv))
    try:
        if args.command == "expand":
            return cmd_expand(args.system, args.value, args.max_digits)
        if args.command == "convert":
            return cmd_convert(args.to, args.rcf, args.value)
        if args.command == "geodesic":
            return cmd_geodesic(args.backward, args.forward, args.letters)
        return cmd_verify(args.suite, args.samples, args.seed)
    except (ModflowError, ValueError, ArithmeticError) as exc:
        return CommandResult("error", {}, [f"{type(exc).__name__}: {exc}"])


def main(argv=None) -> int:
    argv = _glue_values(argv)
    args = build_parser().parse_args(argv)
    result = run(argv)
    if args.json:
        print(emit(result.to_json()))
    else:
        print(json.dumps(result.to_json(), sort_keys=True, indent=2))
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
