"""Command-line entry point: ``kspace <subcommand> ...`` (or ``python -m kspace``)."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import Caps
from .corpus import CHECKS, CorpusConfig, render_summary, resolve_hom, run_verify
from .errors import KSpaceError
from .export import EXPORTS, dumps, export
from .ideals import family
from .morphisms import (
    MultiplicativeSet,
    continuity_check,
    density_check,
    localization_embedding_check,
    localize,
    surjection_homeo_check,
    universal_property_check,
)
from .poly import table1
from .ringspec import parse_ring
from .spectra import build_kspace, build_zariski, compare_spaces

__all__ = ["main", "build_parser", "split_elements", "cmd_table1", "cmd_verify"]


def split_elements(text: str) -> list[str]:
    """Split on commas or semicolons that are not inside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in ",;" and depth == 0:
            out.append("".join(cur).strip())
            cur = []
            continue
        depth += (ch == "(") - (ch == ")")
        cur.append(ch)
    out.append("".join(cur).strip())
    return [s for s in out if s]


def _caps(args) -> Caps:
    return Caps.from_env().with_overrides(getattr(args, "caps", None))


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_table1(ring_spec: str, fmt: str = "text", caps: Caps | None = None) -> str:
    """The four-column table of annihilators and exact witnesses."""
    t = table1(parse_ring(ring_spec, caps), caps)
    return dumps(t.to_json()) if fmt == "json" else t.to_text()


def cmd_verify(config: CorpusConfig | None = None, fmt: str = "json") -> tuple[int, str]:
    status, report = run_verify(config)
    return status, dumps(report) if fmt == "json" else render_summary(report)


def _verify_config(args, caps: Caps) -> CorpusConfig:
    config = CorpusConfig.load(args.config) if args.config else CorpusConfig(caps=caps)
    if args.caps or not args.config:
        config.caps = caps if not args.config else config.caps.with_overrides(args.caps)
    if args.ring:
        chosen = set(args.ring)
        config.rings = list(args.ring)
        config.homs = [h for h in config.homs if {h["source"], h["target"]} <= chosen]
        config.localizations = [x for x in config.localizations if x["ring"] in chosen]
    if args.check:
        config.checks = list(dict.fromkeys(args.check))
    return config


def _run(args) -> int:
    caps = _caps(args)
    cmd = args.command

    if cmd == "table1":
        _emit(cmd_table1(args.ring, args.format, caps), args.out)
        return 0

    if cmd == "verify":
        status, text = cmd_verify(_verify_config(args, caps), args.format)
        _emit(text, args.out)
        return status

    if cmd == "export":
        ring = parse_ring(args.ring, caps)
        fmt = args.format or ("dot" if args.what in ("idl-lattice", "specialization") else "json")
        _emit(export(ring, args.what, fmt, caps), args.out)
        return 0

    if cmd == "spectrum":
        ring = parse_ring(args.ring, caps)
        if args.format == "json":
            top = build_zariski(ring, caps) if args.flavor == "Spec" else (
                build_kspace(ring, args.flavor, caps) if args.flavor in ("Spi", "Idl") else None)
            data = {"ring": ring.label,
                    "families": {f: [str(a) for a in family(ring, f, caps)]
                                 for f in ("Idl", "Spi", "Spec", "Spm")},
                    "comparison": compare_spaces(ring, caps).to_json()}
            if top is not None:
                data["space"] = top.to_json()
            _emit(dumps(data), args.out)
        else:
            lines = [f"{ring.label} ({ring.size} elements)"]
            for f in ("Idl", "Spi", "Spec", "Spm"):
                lines.append(f"  {f}: " + ", ".join(str(a) for a in family(ring, f, caps)))
            _emit("\n".join(lines) + "\n\n" + compare_spaces(ring, caps).to_text(), args.out)
        return 0

    if cmd == "hom":
        spec = {"source": args.source, "target": args.target}
        if args.images is not None:
            spec["images"] = split_elements(args.images)
        reports = []
        for phi in resolve_hom(spec, caps):
            certs = [continuity_check(phi, caps), density_check(phi, caps)]
            if phi.is_surjective:
                certs.append(surjection_homeo_check(phi, caps))
            reports.append({"hom": phi.to_json(), "ok": all(c.ok for c in certs),
                            "certificates": [c.to_json() for c in certs]})
        if args.format == "json":
            _emit(dumps(reports), args.out)
        else:
            _emit("".join(_hom_text(r) for r in reports), args.out)
        return 0 if all(r["ok"] for r in reports) else 1

    if cmd == "localize":
        ring = parse_ring(args.ring, caps)
        S = MultiplicativeSet.generated_by(ring, [ring.element(s) for s in split_elements(args.S)])
        local, pi = localize(ring, S)
        targets = [parse_ring(t, caps) for t in split_elements(args.targets)] if args.targets else []
        certs = [localization_embedding_check(ring, S, caps)]
        if targets:
            certs.append(universal_property_check(ring, S, targets))
        data = {"ring": ring.label, "S": str(S), "localization": local.label,
                "size": local.size, "map": pi.to_json(),
                "ok": all(c.ok for c in certs),
                "certificates": [c.to_json() for c in certs]}
        if args.format == "json":
            _emit(dumps(data), args.out)
        else:
            lines = [f"{ring.label} localized at S={S}: {local.size} elements, kernel {pi.kernel}",
                     "  " + ", ".join(f"{k}->{v}" for k, v in data["map"]["map"].items())]
            lines += [_cert_line(c) for c in certs]
            _emit("\n".join(lines) + "\n", args.out)
        return 0 if data["ok"] else 1

    raise AssertionError(cmd)


def _cert_line(cert) -> str:
    lines = [f"  {cert.name}: {'pass' if cert.ok else 'FAIL'}"]
    for c in cert.checks:
        lines.append(f"    [{'ok' if c.ok else 'FAIL'}] {c.name}")
    return "\n".join(lines)


def _hom_text(r: dict) -> str:
    h = r["hom"]
    head = (f"{h['source']} -> {h['target']}: kernel {h['kernel']}, "
            f"surjective={h['surjective']}, injective={h['injective']}")
    lines = [head, "  " + ", ".join(f"{k}->{v}" for k, v in h["map"].items())]
    for c in r["certificates"]:
        lines.append(f"  {c['certificate']}: {'pass' if c['ok'] else 'FAIL'}")
        for chk in c["checks"]:
            lines.append(f"    [{'ok' if chk['ok'] else 'FAIL'}] {chk['name']}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--caps", help="cap overrides, e.g. max_ring_size=64,sample_count=128")
    common.add_argument("--out", help="write output to this file instead of stdout")

    p = argparse.ArgumentParser(
        prog="kspace",
        description="Ideal spaces of finite commutative rings: k-topology, Zariski contrast, "
                    "polynomial zero sets and induced maps.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("table1", parents=[common], help="annihilators and exact witnesses of every subset")
    s.add_argument("--ring", default="Z4")
    s.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("verify", parents=[common], help="run the property suites over a corpus")
    s.add_argument("--config", help="corpus config JSON file")
    s.add_argument("--ring", action="append", help="restrict the corpus to this ring (repeatable)")
    s.add_argument("--check", action="append", choices=CHECKS, help="run only this check (repeatable)")
    s.add_argument("--format", choices=("text", "json"), default="json")

    s = sub.add_parser("export", parents=[common], help="DOT or JSON export of lattices and spaces")
    s.add_argument("what", choices=EXPORTS)
    s.add_argument("--ring", required=True)
    s.add_argument("--format", choices=("text", "json", "dot"))

    s = sub.add_parser("spectrum", parents=[common], help="ideal families and the Zariski/k-space comparison")
    s.add_argument("--ring", required=True)
    s.add_argument("--flavor", choices=("Idl", "Spi", "Spec", "Spm"), default="Spi")
    s.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("hom", parents=[common], help="homomorphisms and their induced maps")
    s.add_argument("--source", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--images", help="images of the source's generators, separated by ';'")
    s.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("localize", parents=[common], help="localization at a multiplicative set")
    s.add_argument("--ring", required=True)
    s.add_argument("--S", required=True, help="elements generating S, separated by ';' or ','")
    s.add_argument("--targets", help="rings to test the universal property against, ';'-separated")
    s.add_argument("--format", choices=("text", "json"), default="text")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (KSpaceError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"kspace: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
