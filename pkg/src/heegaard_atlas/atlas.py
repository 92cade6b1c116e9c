"""The eight genus-2 examples, their checks, and reports.

Each record holds the two relators read off one genus-2 diagram (the
"caption"), other presentations of the same group, replayable certificates linking those presentations, and
a list of checks.  Everything the atlas asserts is re-verified when the file
is loaded or when a check runs; nothing in the data file is trusted as is.
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from . import diagram
from .groupcalc import (
    AbelianGroup,
    Index,
    MatrixAssignment,
    check_homomorphism,
    homology_h1,
    klein_four,
    perm_from_cycles,
    psl_2_7,
    quotient_search,
    todd_coxeter,
    verify_quotient_witness,
)
from .presentation import (
    ConsequenceCertificate,
    Presentation,
    TietzeCertificate,
    build_planned_certificate,
    build_tietze_certificate,
    search_consequence,
    step_to_json,
    steps_from_json,
    verify_consequence,
    verify_tietze_certificate,
)
from .words import Word, cyclic_normal_form, parse_word

GEOMETRIES = ("S3", "S2xR", "H3", "E3", "Nil", "Sol", "SL2R", "H2xR")
DEFAULT_REALIZE_BUDGET = diagram.DEFAULT_BUDGET

PASS, FAIL, EXHAUSTED = "pass", "fail", "exhausted"


class AtlasError(ValueError):
    def __init__(self, record: str, field_name: str, message: str):
        self.record = record
        self.field = field_name
        super().__init__(f"{record}: {field_name}: {message}")


def tex_to_grammar(tex: str) -> str:
    """``"a^{-1}b=1"`` -> ``"a^-1b"``: drop TeX braces and the ``=1`` suffix."""
    return re.sub(r"\s*=\s*1\s*$", "", tex.replace("{", "").replace("}", ""))


@dataclass
class ConsequenceClaim:
    presentation: Presentation
    dropped: int
    word: Word
    certificate: ConsequenceCertificate | None


@dataclass
class ManifoldRecord:
    name: str
    title: str
    geometry: str
    caption_tex: tuple[str, str]
    caption: Presentation
    sources: dict[str, Presentation]
    certificates: list[TietzeCertificate | None]
    certificate_specs: list[dict]
    consequences: list[ConsequenceClaim]
    expected_h1: AbelianGroup
    checks: list[dict]
    matrices: MatrixAssignment | None = None
    raw: dict = field(default_factory=dict, repr=False)

    def check_names(self) -> list[str]:
        return [check_name(c) for c in self.checks]


def check_name(check: dict) -> str:
    kind = check["kind"]
    if kind == "tc":
        base = "tc" if "source" not in check else f"tc[{check['source']}]"
        sub = ",".join(check.get("subgroup", []))
        return f"{base}<{sub}>" if sub else base
    if kind == "tietze":
        return f"tietze[{check['certificate']}]"
    if kind == "consequence":
        return f"consequence[{check['consequence']}]"
    if kind == "quotient":
        target = check["target"] if isinstance(check["target"], str) else "custom"
        return f"quotient[{target}]"
    return kind


# -- loading ---------------------------------------------------------------


def default_atlas_path() -> Path:
    return Path(str(resources.files("heegaard_atlas") / "data" / "atlas.json"))


def _target_of(spec: dict, caption: Presentation, sources: dict[str, Presentation]) -> Presentation:
    label = spec.get("target")
    return caption if label is None else sources[label]


def _parse_record(data: dict, verify: bool) -> ManifoldRecord:
    name = data.get("name", "?")

    def fail(field_name, message):
        raise AtlasError(name, field_name, message)

    geometry = data.get("geometry")
    if geometry not in GEOMETRIES:
        fail("geometry", f"unknown geometry label {geometry!r}")
    tex = tuple(data["caption_tex"])
    caption_strings = tuple(data["caption"])
    if len(caption_strings) != 2 or len(tex) != 2:
        fail("caption", "a caption has exactly two relators")
    for k, (t, s) in enumerate(zip(tex, caption_strings)):
        if tex_to_grammar(t) != s:
            fail(f"caption[{k}]", f"{s!r} is not the transliteration of {t!r}")
    try:
        caption = Presentation.from_strings(["a", "b"], caption_strings)
    except ValueError as exc:
        fail("caption", str(exc))

    sources = {}
    for k, src in enumerate(data.get("sources", [])):
        try:
            sources[src["label"]] = Presentation.from_strings(src["generators"], src["relators"])
        except (ValueError, KeyError) as exc:
            fail(f"sources[{k}]", str(exc))

    certificates: list[TietzeCertificate | None] = []
    specs = list(data.get("certificates", []))
    for k, spec in enumerate(specs):
        if spec["source"] not in sources:
            fail(f"certificates[{k}]", f"unknown source {spec['source']!r}")
        if "steps" not in spec:
            certificates.append(None)  # resolved by search when the check runs
            continue
        src = sources[spec["source"]]
        try:
            cert = TietzeCertificate(src, _target_of(spec, caption, sources),
                                     steps_from_json(spec["steps"], src), dict(spec.get("renaming", {})))
        except (ValueError, KeyError) as exc:
            fail(f"certificates[{k}]", str(exc))
        if verify:
            verdict = verify_tietze_certificate(cert)
            if not verdict:
                fail(f"certificates[{k}]", verdict.message)
        certificates.append(cert)

    consequences = []
    for k, spec in enumerate(data.get("consequences", [])):
        base = sources.get(spec["presentation"])
        if base is None:
            fail(f"consequences[{k}]", f"unknown presentation {spec['presentation']!r}")
        ambient = base.without_relator(int(spec["drop"]))
        word = parse_word(spec["word"], ambient.alphabet)
        cert = ConsequenceCertificate.from_json(spec["factors"], ambient.alphabet) if "factors" in spec else None
        if verify and cert is not None and not verify_consequence(ambient, word, cert):
            fail(f"consequences[{k}]", "certificate does not reproduce the word")
        consequences.append(ConsequenceClaim(ambient, int(spec["drop"]), word, cert))

    matrices = None
    if "matrices" in data:
        try:
            matrices = MatrixAssignment(data["matrices"])
        except ValueError as exc:
            fail("matrices", str(exc))
        if verify and not check_homomorphism(caption, matrices):
            fail("matrices", "assignment does not satisfy the caption relators")

    checks = list(data.get("checks", []))
    names = [check_name(c) for c in checks]
    if len(set(names)) != len(names):
        fail("checks", f"duplicate checks {names}")

    return ManifoldRecord(
        name=name,
        title=data.get("title", name),
        geometry=geometry,
        caption_tex=tex,  # type: ignore[arg-type]
        caption=caption,
        sources=sources,
        certificates=certificates,
        certificate_specs=specs,
        consequences=consequences,
        expected_h1=AbelianGroup.from_json(data["expected_h1"]),
        checks=checks,
        matrices=matrices,
        raw=data,
    )


def load_atlas(path: str | Path | None = None, verify: bool = True) -> list[ManifoldRecord]:
    """Load and validate the atlas; stored certificates and matrices are checked unless ``verify`` is off."""
    path = Path(path) if path is not None else default_atlas_path()
    data = json.loads(path.read_text())
    records = [_parse_record(item, verify) for item in data]
    names = [r.name for r in records]
    if len(set(names)) != len(names):
        raise AtlasError("atlas", "name", f"duplicate record names {names}")
    geometries = sorted(r.geometry for r in records)
    if geometries != sorted(GEOMETRIES):
        raise AtlasError("atlas", "geometry", f"expected one record per geometry, got {geometries}")
    return records


# -- checks ------------------------------------------------------------------


@dataclass
class CheckResult:
    record: str
    check: str
    outcome: str
    details: str
    elapsed_ms: float
    required: bool = True

    @property
    def ok(self) -> bool:
        return self.outcome == PASS or (self.outcome == EXHAUSTED and not self.required)

    def to_json(self) -> dict:
        return {"record": self.record, "check": self.check, "outcome": self.outcome,
                "details": self.details, "elapsed_ms": round(self.elapsed_ms, 3)}


def _presentation_for(record: ManifoldRecord, check: dict) -> Presentation:
    label = check.get("source")
    return record.caption if label is None else record.sources[label]


def _quotient_target(spec) -> tuple:
    if spec == "klein4":
        return klein_four()
    if spec == "psl27":
        return psl_2_7()
    if isinstance(spec, dict):
        return tuple(perm_from_cycles(c, int(spec["degree"])) for c in spec["generators"])
    raise ValueError(f"unknown quotient target {spec!r}")


def _run_tc(record, check):
    p = _presentation_for(record, check)
    subgroup = [p.word(w) for w in check.get("subgroup", [])]
    max_cosets = int(check.get("max_cosets", 200_000))
    results = {s: todd_coxeter(p, subgroup, max_cosets, strategy=s) for s in ("hlt", "felsch")}
    expected = Index(int(check["expect_index"]))
    details = f"HLT {results['hlt']}, Felsch {results['felsch']}, expected {expected}"
    if "assumption" in check:
        details += f"; assumption: {check['assumption']}"
    if all(isinstance(r, Index) for r in results.values()):
        return (PASS if all(r == expected for r in results.values()) else FAIL), details
    return EXHAUSTED, details


def _run_h1(record, check):
    got = homology_h1(record.caption)
    ok = got == record.expected_h1
    return (PASS if ok else FAIL), f"H1 = {got} (expected {record.expected_h1})"


def _run_matrix(record, check):
    if record.matrices is None:
        return FAIL, "record has no matrix assignment"
    if not check_homomorphism(record.caption, record.matrices):
        return FAIL, "some caption relator does not evaluate to the identity"
    # a single flipped letter must break the relation, otherwise the check proves little
    survivors = []
    for i, r in enumerate(record.caption.relators):
        for k in range(len(r)):
            letters = list(r.letters)
            letters[k] = -letters[k]
            mutated = Presentation(r.alphabet, (Word.from_letters(letters, r.alphabet),)) \
                if Word.from_letters(letters, r.alphabet) else None
            if mutated is not None and check_homomorphism(mutated, record.matrices):
                survivors.append(f"relator {i} letter {k}")
    if survivors:
        return FAIL, f"mutations not detected: {survivors}"
    return PASS, f"all relators map to I_{record.matrices.dim}; every single-letter sign flip is rejected"


def _run_quotient(record, check):
    target = _quotient_target(check["target"])
    w = quotient_search(record.caption, target, bool(check.get("surjective", True)))
    if w is None:
        return FAIL, "no homomorphism found"
    if not verify_quotient_witness(record.caption, w):
        return FAIL, "witness failed re-verification"
    images = ", ".join(f"{k} -> {v}" for k, v in w.images.items())
    return PASS, f"surjective={w.surjective}; {images}"


def _run_realize(record, check):
    r1, r2 = record.caption.relators
    budget = int(check.get("budget", DEFAULT_REALIZE_BUDGET))
    res = diagram.realize(r1, r2, budget)
    if isinstance(res, diagram.Exhausted):
        return EXHAUSTED, f"node budget {budget} exhausted"
    if isinstance(res, diagram.NotRealizable):
        return FAIL, f"no sphere embedding exists (searched {res.nodes} nodes)"
    ok, why = reverify_witness(r1, r2, res.witness)
    if not ok:
        return FAIL, why
    return PASS, f"witness after {res.nodes} nodes; handle orders {res.witness.to_json()}"


def reverify_witness(r1: Word, r2: Word, witness: diagram.RotationSystem) -> tuple[bool, str]:
    """Mirror constraint, Euler characteristic and relator round trip, checked from scratch."""
    if not diagram.is_planar_witness(r1, r2, witness):
        return False, "witness is not a sphere embedding"
    enc = diagram.encoding_from_witness(r1, r2, witness)
    if not diagram.validate(enc):
        return False, "; ".join(diagram.diagnose(enc))
    back = diagram.read_relators(enc)
    if [cyclic_normal_form(w) for w in back] != [cyclic_normal_form(r1), cyclic_normal_form(r2)]:
        return False, "encoding does not read back to the relators"
    if not diagram.encoding_is_planar(enc):
        return False, "encoding is not planar"
    return True, ""


def resolve_certificate(record: ManifoldRecord, k: int, **search_opts) -> TietzeCertificate | None:
    cert = record.certificates[k]
    if cert is not None:
        return cert
    spec = record.certificate_specs[k]
    if "plan" in spec:
        return build_planned_certificate(record.sources[spec["source"]], _target_of(spec, record.caption, record.sources),
                                         spec["plan"], spec.get("renaming"), **search_opts)
    return build_tietze_certificate(record.sources[spec["source"]], _target_of(spec, record.caption, record.sources),
                                    spec.get("eliminate"), spec.get("renaming"), **search_opts)


def _run_tietze(record, check):
    k = int(check["certificate"])
    cert = resolve_certificate(record, k)
    if cert is None:
        return FAIL, "no certificate stored and search failed"
    verdict = verify_tietze_certificate(cert)
    if not verdict:
        return FAIL, verdict.message
    h_src, h_tgt = homology_h1(cert.source), homology_h1(cert.target)
    if h_src != h_tgt:
        return FAIL, f"H1 changed along the chain: {h_src} vs {h_tgt}"
    spec = record.certificate_specs[k]
    target = spec.get("target", "caption")
    n = len(cert.steps)
    return PASS, f"{n} step{'s' if n != 1 else ''} from {spec['source']} to {target}; H1 = {h_src} on both ends"


def _run_consequence(record, check):
    claim = record.consequences[int(check["consequence"])]
    cert = claim.certificate or search_consequence(claim.presentation, claim.word)
    if cert is None:
        return FAIL, "no certificate stored and search failed"
    if not verify_consequence(claim.presentation, claim.word, cert):
        return FAIL, "certificate does not reproduce the word"
    # indices in the ambient presentation skip the dropped relator
    used = [i if i < claim.dropped else i + 1 for i in cert.relators_used]
    return PASS, f"{claim.word} = product of {len(cert.factors)} conjugates; uses relators {used} of the original"


RUNNERS = {
    "tc": _run_tc,
    "h1": _run_h1,
    "matrix": _run_matrix,
    "quotient": _run_quotient,
    "realize": _run_realize,
    "tietze": _run_tietze,
    "consequence": _run_consequence,
}


def verify_manifold(record: ManifoldRecord) -> list[CheckResult]:
    results = []
    for check in record.checks:
        required = bool(check.get("required", True))
        start = time.perf_counter()
        try:
            outcome, details = RUNNERS[check["kind"]](record, check)
        except Exception as exc:  # a crashing check is a failed check, not a crashed report
            outcome, details = FAIL, f"{type(exc).__name__}: {exc}"
        elapsed = (time.perf_counter() - start) * 1000
        results.append(CheckResult(record.name, check_name(check), outcome, details, elapsed, required))
    return results


@dataclass
class Report:
    results: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def records(self) -> list[str]:
        seen = []
        for r in self.results:
            if r.record not in seen:
                seen.append(r.record)
        return seen

    def to_json(self) -> dict:
        """``{"passed", "records": [{"record", "passed", "checks": [...]}]}`` in atlas order."""
        records = []
        for name in self.records():
            rows = [r for r in self.results if r.record == name]
            records.append({"record": name, "passed": all(r.ok for r in rows), "checks": [r.to_json() for r in rows]})
        return {"passed": self.ok, "records": records}

    def to_text(self) -> str:
        lines = []
        for name in self.records():
            rows = [r for r in self.results if r.record == name]
            status = "PASS" if all(r.ok for r in rows) else "FAIL"
            lines.append(f"{name}: {status}")
            for r in rows:
                lines.append(f"  {r.outcome:<9} {r.check:<24} {r.elapsed_ms:9.1f} ms  {r.details}")
        lines.append("all checks passed" if self.ok else "some checks FAILED")
        return "\n".join(lines)


def run_atlas(records: Sequence[ManifoldRecord], names: Sequence[str] | None = None) -> Report:
    chosen = records if names is None else [r for r in records if r.name in set(names)]
    results: list[CheckResult] = []
    for rec in chosen:
        results.extend(verify_manifold(rec))
    return Report(results)


# -- certificate derivation (maintenance) ------------------------------------


def derive_certificates(data: list[dict[str, Any]], **search_opts) -> list[dict[str, Any]]:
    """Fill in missing certificate steps and consequence factors in raw atlas data."""
    for item in data:
        record = _parse_record(item, verify=False)
        for k, spec in enumerate(item.get("certificates", [])):
            if "steps" in spec:
                continue
            cert = resolve_certificate(record, k, **search_opts)
            if cert is None:
                raise AtlasError(record.name, f"certificates[{k}]", "search failed")
            spec["steps"] = [step_to_json(s) for s in cert.steps]
        for k, spec in enumerate(item.get("consequences", [])):
            if "factors" in spec:
                continue
            claim = record.consequences[k]
            cert = search_consequence(claim.presentation, claim.word, **search_opts)
            if cert is None:
                raise AtlasError(record.name, f"consequences[{k}]", "search failed")
            spec["factors"] = cert.to_json()
    return data
