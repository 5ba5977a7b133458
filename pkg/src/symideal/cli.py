"""Command-line front end.

Exit codes: 0 computed (the answer may be "refuted"), 1 user error,
2 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import certificate as cert_mod
from . import groebner as gb
from . import resolution as res_mod
from .certificate import Certificate, CertificateError, verify_certificate
from .poly import ParseError, PolyError, PolyRing, parse

SCHEMA_VERSION = 1


class UserError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    parameters: dict
    status: str = "ok"  # ok | refuted | error
    wall_ms: float = 0.0
    payload: Any = None
    text: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "parameters": self.parameters,
            "status": self.status,
            "wall_ms": round(self.wall_ms, 3),
            "payload": self.payload,
        }


# --- ideal specifications -------------------------------------------------------------


def _parse_int_range(text: str) -> list[int]:
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _ideal_from_file(path: Path) -> gb.Ideal:
    text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        doc = None
    if isinstance(doc, dict):
        ring = PolyRing(doc["variables"])
        return gb.Ideal([parse(g, ring) for g in doc["generators"]], ring)
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if isinstance(doc, list):
        lines = [str(x) for x in doc]
    if not lines:
        raise UserError(f"no generators in {path}")
    names: list[str] = []
    for ln in lines:
        for n in parse(ln).ring.names:
            if n not in names:
                names.append(n)
    ring = PolyRing(names)
    return gb.Ideal([parse(ln, ring) for ln in lines], ring)


def ideal_from_spec(spec: str) -> gb.Ideal:
    """J:N, Ird:r:d, I:N:nvars, or a path to a generator file."""
    parts = spec.split(":")
    try:
        if parts[0] == "J" and len(parts) == 2:
            return gb.j_ideal(int(parts[1]))
        if parts[0] == "Ird" and len(parts) == 3:
            return gb.build_Ird(int(parts[1]), int(parts[2]))
        if parts[0] == "I" and len(parts) == 3:
            return gb.symmetric_ideal(int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise UserError(f"bad ideal spec {spec!r}: {exc}") from None
    path = Path(spec)
    if path.is_file():
        return _ideal_from_file(path)
    raise UserError(f"unrecognized ideal spec {spec!r} (expected J:N, Ird:r:d, I:N:nvars, or a file)")


# --- commands ---------------------------------------------------------------------------


def _cert_text(cert: Certificate) -> list[str]:
    lines = [f"ring: Q[{', '.join(cert.ring.names)}]", f"target: {cert.target}"]
    for k, (g, c) in enumerate(cert.pairs, 1):
        lines.append(f"  [{k}] generator: {g}")
        lines.append(f"      cofactor:  {c}")
    return lines


def cmd_certificate(args) -> RunReport:
    if args.n < 1:
        raise UserError("n must be positive")
    report = RunReport("certificate", {"n": args.n, "method": args.method})
    if args.method == "structured":
        cert, trace = cert_mod.build_certificate_structured(args.n)
    else:
        N = 2 * args.n
        x, y = gb.J_RING.var("x"), gb.J_RING.var("y")
        cert = cert_mod.build_certificate_generic((x * y) ** (N - 1), cert_mod.j_ideal(N), N - 2)
        if cert is None:
            raise CertificateError("generic solve found no certificate")
    ok, _ = verify_certificate(cert)
    if not ok:
        raise CertificateError("certificate does not verify")
    report.payload = {"certificate": cert.to_dict(), "verified": True}
    report.text = _cert_text(cert) + ["verified: yes"]
    return report


def cmd_symmetric(args) -> RunReport:
    if args.i == args.j or args.i < 1 or args.j < 1 or args.n < 1:
        raise UserError("need n >= 1 and distinct indices i, j >= 1")
    report = RunReport("symmetric", {"n": args.n, "i": args.i, "j": args.j})
    cert = cert_mod.symmetric_certificate(args.n, args.i, args.j)
    report.payload = {"certificate": cert.to_dict(), "verified": True}
    report.text = _cert_text(cert) + ["verified: yes"]
    return report


def cmd_member(args) -> RunReport:
    ideal = ideal_from_spec(args.ideal)
    p = parse(args.poly, ideal.ring)
    report = RunReport("member", {"ideal": args.ideal, "poly": args.poly})
    order = "grevlex"
    if p.is_homogeneous() and ideal.is_homogeneous() and not p.is_zero():
        basis = ideal.groebner_basis(order, degree_bound=p.total_degree())
    else:
        basis = ideal.groebner_basis(order)
    nf = basis.normal_form(p) if not p.is_zero() else p
    member = nf.is_zero()
    report.status = "ok" if member else "refuted"
    report.payload = {"member": member, "normal_form": str(nf), "variables": list(ideal.ring.names)}
    report.text = [f"ideal: {args.ideal} in Q[{', '.join(ideal.ring.names)}]", f"poly: {p}",
                   f"normal form: {nf}", "member" if member else "non-member"]
    return report


def cmd_contract(args) -> RunReport:
    if args.N < 1:
        raise UserError("N must be positive")
    report = RunReport("contract", {"N": args.N})
    J = gb.j_ideal(args.N)
    contraction = gb.eliminate(J, ["d"])
    gens = [str(g) for g in contraction.generators]
    payload = {"variables": list(contraction.ring.names), "generators": gens}
    text = [f"J({args.N}) intersected with Q[x, y] is generated by:"] + [f"  {g}" for g in gens]
    if args.N >= 2:
        conj = gb.conjectured_contraction(args.N)
        equal = gb.ideal_equals(contraction, conj)
        payload["conjectured"] = [str(g) for g in conj.generators]
        payload["equals_conjectured"] = equal
        text.append(f"equals the conjectured monomial ideal: {'yes' if equal else 'no'}")
    report.payload = payload
    report.text = text
    return report


def cmd_betti(args) -> RunReport:
    if args.r < 1 or args.d < 1:
        raise UserError("r and d must be positive")
    report = RunReport("betti", {"r": args.r, "d": args.d})
    table = res_mod.betti_table(gb.build_Ird(args.r, args.d))
    payload = {"table": table.to_dict()}
    text = [f"Betti table of R/I_{args.r}^({args.d}) (columns i, rows j - i):", table.diagram()]
    if args.r <= 3:
        conj = res_mod.conjectured_betti(args.r, args.d)
        diff = table.diff(conj)
        payload["matches_conjectured"] = not diff
        payload["diff"] = [{"i": i, "j": j, "computed": a, "conjectured": b} for (i, j), (a, b) in diff.items()]
        report.status = "ok" if not diff else "refuted"
        if diff:
            text.append("differs from the conjectured table at:")
            text += [f"  beta_{{{i},{j}}}: computed {a}, conjectured {b}" for (i, j), (a, b) in diff.items()]
        else:
            text.append("matches the conjectured table")
    report.payload = payload
    report.text = text
    return report


def _conj41_instance(r: int, n: int) -> dict:
    start = time.perf_counter()
    holds = gb.conjecture41_check(r, n)
    return {"r": r, "n": n, "holds": holds, "seconds": round(time.perf_counter() - start, 4)}


def cmd_conjecture(args) -> RunReport:
    report = RunReport("conjecture", {"which": args.which})
    if args.which == "3.5":
        Ns = _parse_int_range(args.N) if args.grid else [int(args.N)]
        if any(N < 2 for N in Ns):
            raise UserError("N must be at least 2")
        report.parameters["N"] = Ns
        results = []
        for N in Ns:
            rep = gb.conjecture35_report(N)
            results.append({
                "N": N,
                "superset_holds": rep.superset_holds,
                "equality_holds": rep.equality_holds,
                "witness": None if rep.witness is None else str(rep.witness),
                "contraction": [str(g) for g in rep.contraction],
                "seconds": round(rep.seconds, 4),
            })
            report.text.append(f"N={N}: superset {'holds' if rep.superset_holds else 'FAILS'}, "
                               f"equality {'holds' if rep.equality_holds else 'fails'}"
                               + ("" if rep.witness is None else f" (witness {rep.witness})"))
        holds = all(r["equality_holds"] for r in results)
        if not all(r["superset_holds"] for r in results):
            raise CertificateError("a proven inclusion failed to verify")
    else:
        rs = _parse_int_range(args.r) if args.grid else [int(args.r)]
        ns = _parse_int_range(args.n) if args.grid else [int(args.n)]
        if any(r < 1 for r in rs) or any(n < 1 for n in ns):
            raise UserError("r and n must be positive")
        report.parameters.update({"r": rs, "n": ns})
        jobs = [(r, n) for r in rs for n in ns]
        with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
            results = list(pool.map(lambda rn: _conj41_instance(*rn), jobs))
        for res in results:
            report.text.append(f"r={res['r']}, n={res['n']}: {'holds' if res['holds'] else 'fails'} "
                               f"({res['seconds']:.3f} s)")
        holds = all(r["holds"] for r in results)
    report.status = "ok" if holds else "refuted"
    report.payload = {"results": results, "holds": holds}
    return report


def cmd_verify(args) -> RunReport:
    path = Path(args.file)
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UserError(f"cannot read certificate: {exc}") from None
    if isinstance(doc.get("payload"), dict) and "certificate" in doc["payload"]:
        doc = doc["payload"]["certificate"]
    try:
        cert = Certificate.from_dict(doc)
    except (KeyError, TypeError) as exc:
        raise UserError(f"malformed certificate document: {exc}") from None
    ok, residual = verify_certificate(cert)
    report = RunReport("verify", {"file": str(path)})
    report.status = "ok" if ok else "refuted"
    report.payload = {"verified": ok, "residual": str(residual)}
    report.text = [f"target: {cert.target}", "verified: yes" if ok else f"verified: NO (residual {residual})"]
    return report


# --- entry point --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symideal", description="Membership certificates for symmetric ideals")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["text", "json"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certificate", parents=[fmt], help="certificate for (xy)^(2n-1) in J(2n)")
    p.add_argument("n", type=int)
    p.add_argument("--method", choices=["structured", "generic"], default="structured")
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("symmetric", parents=[fmt], help="certificate for f * sigma(g) in I(2n)")
    p.add_argument("n", type=int)
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.set_defaults(func=cmd_symmetric)

    p = sub.add_parser("member", parents=[fmt], help="ideal membership by Groebner normal form")
    p.add_argument("--ideal", required=True, help="J:N, Ird:r:d, I:N:nvars, or a generator file")
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("contract", parents=[fmt], help="generators of J(N) intersected with Q[x, y]")
    p.add_argument("N", type=int)
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("betti", parents=[fmt], help="Betti table of R/I_r^(d)")
    p.add_argument("r", type=int)
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("conjecture", parents=[fmt], help="check the contraction or more-variables conjecture")
    p.add_argument("which", choices=["3.5", "4.1"])
    p.add_argument("--N", default="2")
    p.add_argument("--r", default="2")
    p.add_argument("--n", default="1")
    p.add_argument("--grid", action="store_true", help="treat --N/--r/--n as ranges like 1-3 and sweep")
    p.add_argument("--workers", type=int, default=4)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("verify", parents=[fmt], help="re-verify a certificate JSON file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (UserError, ParseError, PolyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CertificateError, ArithmeticError, AssertionError) as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 2
    report.wall_ms = (time.perf_counter() - start) * 1000
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print("\n".join(report.text))
        print(f"status: {report.status} ({report.wall_ms:.1f} ms)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
