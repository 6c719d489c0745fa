"""Corpus configuration and the verification runner behind ``kspace verify``."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .config import Caps, resolve
from .errors import KSpaceError
from .ideals import spi
from .morphisms import (
    MultiplicativeSet,
    RingHom,
    continuity_check,
    density_check,
    find_homomorphisms,
    localization_embedding_check,
    nilradical_check,
    quotient_corollary_check,
    surjection_homeo_check,
    universal_property_check,
)
from .rings import FiniteRing, idempotents
from .ringspec import parse_ring
from .spectra import (
    Check,
    ItemResult,
    SuiteReport,
    build_kspace,
    build_zariski,
    kspace_suite,
    prop22_suite,
    zariski_suite,
)

__all__ = [
    "CHECKS",
    "DEFAULT_RINGS",
    "DEFAULT_HOMS",
    "DEFAULT_LOCALIZATIONS",
    "CorpusConfig",
    "connectedness_suite",
    "resolve_hom",
    "run_verify",
    "render_summary",
]

CHECKS = ("prop22", "topology", "zariski", "connectedness", "morphisms")

DEFAULT_RINGS = (
    "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z11", "Z12",
    "Z2xZ2", "Z2[x]/(x^2)", "Z2[x]/(x^2+x+1)",
    "Z2xZ4", "Z4[x]/(x^2)", "Z2[x]/(x^3)", "Z2xZ2xZ2",
)

# source, target, generator images (None: every homomorphism between the two)
DEFAULT_HOMS = (
    {"source": "Z4", "target": "Z2"},
    {"source": "Z6", "target": "Z2"},
    {"source": "Z6", "target": "Z3"},
    {"source": "Z12", "target": "Z4"},
    {"source": "Z4", "target": "Z4"},
    {"source": "Z6", "target": "Z6"},
    {"source": "Z2", "target": "Z2xZ2"},
    {"source": "Z2[x]/(x^2)", "target": "Z2", "images": ["0"]},
    {"source": "Z4[x]/(x^2)", "target": "Z4", "images": ["0"]},
    {"source": "Z4", "target": "Z4[x]/(x^2)"},
    {"source": "Z2", "target": "Z2[x]/(x^2+x+1)"},
    {"source": "Z2[x]/(x^2+x+1)", "target": "Z2[x]/(x^2+x+1)", "images": ["x+1"]},
)

DEFAULT_LOCALIZATIONS = (
    {"ring": "Z6", "S": ["1", "3"]},
    {"ring": "Z4", "S": ["1", "3"]},
    {"ring": "Z6", "S": ["1"]},
    {"ring": "Z12", "S": ["1", "5", "7", "11"]},
    {"ring": "Z12", "S": ["1", "3", "9"]},
)

UNIVERSAL_TARGET_SIZE = 8


@dataclass
class CorpusConfig:
    rings: list[str] = field(default_factory=lambda: list(DEFAULT_RINGS))
    homs: list[dict] = field(default_factory=lambda: [dict(h) for h in DEFAULT_HOMS])
    localizations: list[dict] = field(default_factory=lambda: [dict(x) for x in DEFAULT_LOCALIZATIONS])
    checks: list[str] = field(default_factory=lambda: list(CHECKS))
    caps: Caps = field(default_factory=Caps)
    output: dict = field(default_factory=lambda: {"format": "json", "path": None})

    def __post_init__(self):
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown:
            raise ValueError(f"unknown check(s) {unknown}; expected some of {list(CHECKS)}")
        if self.output.get("format", "json") not in ("text", "json", "dot"):
            raise ValueError("output format must be text, json or dot")

    @classmethod
    def from_json(cls, data: dict) -> CorpusConfig:
        known = {"rings", "homs", "localizations", "checks", "caps", "output"}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown corpus config keys {sorted(extra)}")
        kwargs = {k: data[k] for k in ("rings", "homs", "localizations", "checks", "output") if k in data}
        if "caps" in data:
            kwargs["caps"] = Caps(**data["caps"])
        return cls(**kwargs)

    @classmethod
    def load(cls, path) -> CorpusConfig:
        return cls.from_json(json.loads(Path(path).read_text()))

    def to_json(self) -> dict:
        return {"rings": list(self.rings), "homs": list(self.homs),
                "localizations": list(self.localizations), "checks": list(self.checks),
                "caps": self.caps.as_dict(), "output": dict(self.output)}


def connectedness_suite(ring: FiniteRing, caps: Caps | None = None) -> SuiteReport:
    """Spi A is always connected; Spec A is connected iff A has no nontrivial idempotents."""
    caps = resolve(caps)
    spi_rep = build_kspace(ring, "Spi", caps).report()
    spec_rep = build_zariski(ring, caps).report()
    nontrivial = sorted(idempotents(ring) - {ring.zero, ring.one})
    spi_item = ItemResult("Spi", "Spi A is connected",
                          [Check("connected", spi_rep.connected, 1)])
    spec_item = ItemResult("Spec", "Spec A connected iff no nontrivial idempotents", [
        Check("connectedness matches idempotents", spec_rep.connected == (not nontrivial), 1,
              observed={"connected": spec_rep.connected,
                        "nontrivial_idempotents": [ring.element_labels[e] for e in nontrivial]})])
    return SuiteReport(ring.label, "connectedness", [spi_item, spec_item],
                       {"spi_connected": spi_rep.connected, "spec_connected": spec_rep.connected})


def _ring_morphisms(ring: FiniteRing, caps: Caps) -> SuiteReport:
    """Quotient corollary for every proper ideal, and the nilradical quotient on Spec."""
    items = []
    for a in spi(ring, caps):
        cert = quotient_corollary_check(ring, a, caps)
        items.append(ItemResult(f"quotient {a}", f"Spi(A/{a}) is homeomorphic to V({a})", cert.checks))
    cert = nilradical_check(ring, caps)
    items.append(ItemResult("nilradical", "Spec A and Spec(A/N) are homeomorphic", cert.checks))
    return SuiteReport(ring.label, "morphisms", items)


_SUITES = {
    "prop22": prop22_suite,
    "topology": kspace_suite,
    "zariski": zariski_suite,
    "connectedness": connectedness_suite,
    "morphisms": _ring_morphisms,
}


def resolve_hom(spec: dict, caps: Caps | None = None,
                rings: dict[str, FiniteRing] | None = None) -> list[RingHom]:
    """Homomorphisms described by ``{"source", "target", "images"?}``."""
    rings = {} if rings is None else rings

    def get(text):
        if text not in rings:
            rings[text] = parse_ring(text, caps)
        return rings[text]

    A, B = get(spec["source"]), get(spec["target"])
    images = spec.get("images")
    if images is None:
        homs = find_homomorphisms(A, B)
        if not homs:
            raise KSpaceError(f"no ring homomorphism {A.label} -> {B.label}")
        return homs
    return [RingHom.from_generator_images(A, B, [B.element(s) for s in images])]


def _error(where: str, exc: Exception) -> dict:
    return {"where": where, "error": type(exc).__name__, "message": str(exc)}


def _hom_report(phi: RingHom, caps: Caps) -> dict:
    certs = [continuity_check(phi, caps), density_check(phi, caps)]
    if phi.is_surjective:
        certs.append(surjection_homeo_check(phi, caps))
    return {"hom": phi.to_json(), "name": str(phi),
            "ok": all(c.ok for c in certs),
            "certificates": [c.to_json() for c in certs]}


def run_verify(config: CorpusConfig | None = None) -> tuple[int, dict]:
    """Run the selected checks over the corpus.

    Returns ``(exit_status, report)``: 0 when every check holds (recorded
    discrepancies included), 1 when some check fails, 2 when some ring or
    homomorphism could not be built at all.
    """
    config = config or CorpusConfig()
    caps = config.caps
    rings: dict[str, FiniteRing] = {}
    ring_reports, errors, failures = [], [], []
    for text in config.rings:
        entry = {"spec": text}
        try:
            ring = rings[text] = parse_ring(text, caps)
            entry.update(ring=ring.label, size=ring.size)
            suites = {}
            for name in config.checks:
                rep = _SUITES[name](ring, caps)
                suites[name] = rep.to_json()
                if not rep.ok:
                    failures.append(f"{ring.label}:{name}")
            entry["suites"] = suites
        except KSpaceError as exc:
            entry["error"] = _error(text, exc)
            errors.append(entry["error"])
        ring_reports.append(entry)

    report = {"caps": caps.as_dict(), "checks": list(config.checks), "rings": ring_reports}

    if "morphisms" in config.checks:
        hom_reports = []
        for spec in config.homs:
            where = f"{spec.get('source')} -> {spec.get('target')}"
            try:
                for phi in resolve_hom(spec, caps, rings):
                    r = _hom_report(phi, caps)
                    hom_reports.append(r)
                    if not r["ok"]:
                        failures.append(f"hom {r['name']}")
            except KSpaceError as exc:
                errors.append(_error(where, exc))
        report["homomorphisms"] = hom_reports

        targets = [rings[t] for t in config.rings
                   if t in rings and rings[t].size <= UNIVERSAL_TARGET_SIZE]
        loc_reports = []
        for spec in config.localizations:
            where = f"{spec.get('ring')} at {spec.get('S')}"
            try:
                ring = rings.get(spec["ring"]) or parse_ring(spec["ring"], caps)
                S = MultiplicativeSet(ring, [ring.element(s) for s in spec["S"]])
                certs = [localization_embedding_check(ring, S, caps),
                         universal_property_check(ring, S, targets)]
                ok = all(c.ok for c in certs)
                loc_reports.append({"ring": ring.label, "S": str(S), "ok": ok,
                                    "certificates": [c.to_json() for c in certs]})
                if not ok:
                    failures.append(f"localization {where}")
            except KSpaceError as exc:
                errors.append(_error(where, exc))
        report["localizations"] = loc_reports

    status = 2 if errors else 1 if failures else 0
    report["summary"] = {"status": status, "ok": status == 0,
                         "failures": failures, "errors": errors}
    return status, report


def render_summary(report: dict) -> str:
    """Human-readable digest of a verify report: one line per ring and suite."""
    lines = []
    for entry in report["rings"]:
        if "error" in entry:
            lines.append(f"{entry['spec']}: ERROR {entry['error']['message']}")
            continue
        parts = []
        for name, suite in entry["suites"].items():
            verdicts = [i["verdict"] for i in suite["items"]]
            tag = "fail" if "fail" in verdicts else (
                "pass*" if "known-discrepancy" in verdicts else "pass")
            parts.append(f"{name}={tag}")
        lines.append(f"{entry['ring']}: " + " ".join(parts))
    for h in report.get("homomorphisms", []):
        lines.append(f"hom {h['name']}: {'pass' if h['ok'] else 'fail'}")
    for loc in report.get("localizations", []):
        lines.append(f"localize {loc['ring']} at S={loc['S']}: {'pass' if loc['ok'] else 'fail'}")
    s = report["summary"]
    lines.append(f"status {s['status']}: {len(s['failures'])} failing, {len(s['errors'])} errors"
                 " (pass* = passes with recorded discrepancies)")
    for e in s["errors"]:
        lines.append(f"  error in {e['where']}: {e['error']}: {e['message']}")
    for f in s["failures"]:
        lines.append(f"  failed: {f}")
    return "\n".join(lines) + "\n"
