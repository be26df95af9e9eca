"""Stable on-disk formats: presentation and decomposition files are TOML,
character and facts files are simple line formats.

Loading a presentation with a declared oracle family cross-checks every
relator against the oracle (a relator that is not the identity in the
declared family is rejected), so family declarations are never silently
trusted.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Any

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .errors import FileFormatError, InputRejected
from .facts import SigmaFact, SigmaStatus, UserAxiom
from .hnn import HnnDecomposition
from .oracles import (
    BsOracle,
    DirectProductOracle,
    FreeAbelianOracle,
    FreeOracle,
    WordOracle,
)
from .presentation import (
    Character,
    GroupFlags,
    GroupPresentation,
    RayClass,
    TriState,
    character_from_values,
    ray_from_ints,
)
from .words import Word, format_word, parse_word

FLAG_KEYS = {
    "no_free_subgroups": "no_nonabelian_free_subgroups",
    "no_nonabelian_free_subgroups": "no_nonabelian_free_subgroups",
    "amenable": "amenable",
    "claimed_kahler": "claimed_kahler",
    "commutator_fg": "commutator_fg",
}


def _read_toml(path: str | Path) -> dict[str, Any]:
    try:
        with open(path, "rb") as handle:
            return tomllib.load(handle)
    except FileNotFoundError:
        raise FileFormatError("file not found", path=str(path)) from None
    except tomllib.TOMLDecodeError as exc:
        raise FileFormatError(f"invalid TOML: {exc}", path=str(path)) from None


def parse_flags(table: dict[str, Any], path: str | None = None) -> GroupFlags:
    values = {}
    for key, raw in table.items():
        field = FLAG_KEYS.get(key)
        if field is None:
            raise FileFormatError(f"unknown flag {key!r}", path=path)
        if not isinstance(raw, str):
            raise FileFormatError(
                f"flag {key!r} must be a string true/false/unknown", path=path
            )
        values[field] = TriState.parse(raw)
    return GroupFlags(**values)


def _expect(table: dict[str, Any], key: str, kind, path: str,
            default=None, required=False):
    if key not in table:
        if required:
            raise FileFormatError(f"missing required key {key!r}", path=path)
        return default
    value = table[key]
    if not isinstance(value, kind):
        raise FileFormatError(f"key {key!r} has the wrong type", path=path)
    return value


def _string_list(table: dict[str, Any], key: str, path: str,
                 default=()) -> list[str]:
    value = _expect(table, key, list, path, default=list(default))
    for item in value:
        if not isinstance(item, str):
            raise FileFormatError(f"entries of {key!r} must be strings", path=path)
    return value


def _build_oracle(table: dict[str, Any], generators: tuple[str, ...],
                  relator_words: tuple[Word, ...], path: str) -> WordOracle | None:
    family = _expect(table, "family", str, path, default="none")
    oracle: WordOracle | None
    if family == "none":
        return None
    if family == "free":
        oracle = FreeOracle(len(generators))
    elif family == "free_abelian":
        oracle = FreeAbelianOracle(len(generators))
    elif family == "bs":
        n = _expect(table, "n", int, path, required=True)
        if len(generators) != 2:
            raise FileFormatError(
                "the bs family needs exactly two generators "
                "(translation first, stable letter second)", path=path)
        if n < 2:
            raise FileFormatError("the bs family needs n >= 2", path=path)
        oracle = BsOracle(n)
        if not all(oracle.is_identity(r) for r in relator_words):
            # the file may present the contracting reading of the stable letter
            oracle = BsOracle(n, scale_sign=-1)
    elif family == "product":
        factors = _expect(table, "factor", list, path, required=True)
        if len(factors) != 2:
            raise FileFormatError("the product family needs exactly two "
                                  "factor blocks", path=path)
        split = []
        offset = 0
        for block in factors:
            if not isinstance(block, dict):
                raise FileFormatError("factor blocks must be tables", path=path)
            gens = tuple(_string_list(block, "generators", path))
            if not gens:
                raise FileFormatError("factor blocks need generators", path=path)
            if tuple(generators[offset:offset + len(gens)]) != gens:
                raise FileFormatError(
                    "factor generators must partition the generator list "
                    "in order", path=path)
            sub = _build_oracle(block, gens, (), path)
            if sub is None:
                raise FileFormatError("factor blocks need a concrete family",
                                      path=path)
            split.append((sub, gens))
            offset += len(gens)
        if offset != len(generators):
            raise FileFormatError("factor generators must cover the "
                                  "generator list", path=path)
        (o1, g1), (o2, g2) = split
        oracle = DirectProductOracle(o1, o2, g1, g2)
    else:
        raise FileFormatError(f"unknown family {family!r}", path=path)
    for relator in relator_words:
        if not oracle.is_identity(relator):
            raise FileFormatError(
                f"relator {format_word(relator, generators)!r} is not the "
                f"identity in the declared {family!r} family", path=path)
    return oracle


def load_presentation(path: str | Path) -> tuple[GroupPresentation, WordOracle | None]:
    data = _read_toml(path)
    path = str(path)
    generators = tuple(_string_list(data, "generators", path))
    if not generators:
        raise FileFormatError("a presentation needs at least one generator",
                              path=path)
    relator_texts = _string_list(data, "relators", path)
    flags_table = _expect(data, "flags", dict, path, default={})
    flags = parse_flags(flags_table, path)
    try:
        relators = tuple(parse_word(t, generators) for t in relator_texts)
        presentation = GroupPresentation(generators, relators, flags)
    except InputRejected as exc:
        raise FileFormatError(str(exc), path=path) from None
    oracle = _build_oracle(data, generators, relators, path)
    return presentation, oracle


def load_character(path: str | Path,
                   presentation: GroupPresentation) -> Character:
    """Lines of ``symbol = p/q`` (or ``p``); every generator must appear."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FileFormatError("file not found", path=str(path)) from None
    values: dict[str, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FileFormatError("expected 'symbol = rational'",
                                  path=str(path), line=lineno)
        symbol, _, rational = line.partition("=")
        symbol = symbol.strip()
        if symbol not in presentation.generators:
            raise FileFormatError(f"unknown generator {symbol!r}",
                                  path=str(path), line=lineno)
        if symbol in values:
            raise FileFormatError(f"duplicate value for {symbol!r}",
                                  path=str(path), line=lineno)
        try:
            values[symbol] = Fraction(rational.strip())
        except (ValueError, ZeroDivisionError):
            raise FileFormatError(f"invalid rational {rational.strip()!r}",
                                  path=str(path), line=lineno) from None
    missing = [g for g in presentation.generators if g not in values]
    if missing:
        raise FileFormatError(f"missing values for generators {missing}",
                              path=str(path))
    return character_from_values(
        presentation, [values[g] for g in presentation.generators]
    )


def load_decomposition(path: str | Path) -> HnnDecomposition:
    data = _read_toml(path)
    path = str(path)
    base_table = _expect(data, "base", dict, path, required=True)
    base_gens = tuple(_string_list(base_table, "generators", path))
    base_rel_texts = _string_list(base_table, "relators", path)
    base_flags = parse_flags(_expect(base_table, "flags", dict, path, default={}),
                             path)
    try:
        base_rels = tuple(parse_word(t, base_gens) for t in base_rel_texts)
        base = GroupPresentation(base_gens, base_rels, base_flags)
    except InputRejected as exc:
        raise FileFormatError(str(exc), path=path) from None
    oracle = _build_oracle(base_table, base_gens, base_rels, path)

    stable = _expect(data, "stable_letter", str, path, required=True)
    exponent = _expect(data, "stable_exponent", int, path, default=1)
    b1_texts = _string_list(data, "b1", path)
    b2_texts = _string_list(data, "b2", path)
    phi_lines = _string_list(data, "phi", path)
    ambient_flags = parse_flags(_expect(data, "flags", dict, path, default={}),
                                path)

    def parse_base_word(text: str) -> Word:
        try:
            word = parse_word(text, base_gens)
        except InputRejected as exc:
            raise FileFormatError(str(exc), path=path) from None
        return word

    b1 = tuple(parse_base_word(t) for t in b1_texts)
    phi_map: dict[Word, Word] = {}
    for line in phi_lines:
        if "->" not in line:
            raise FileFormatError(
                f"phi lines look like 'word -> word', got {line!r}", path=path)
        lhs, _, rhs = line.partition("->")
        source = parse_base_word(lhs.strip())
        if source in phi_map:
            raise FileFormatError(f"phi defined twice on {lhs.strip()!r}",
                                  path=path)
        phi_map[source] = parse_base_word(rhs.strip())
    images = []
    for word, text in zip(b1, b1_texts):
        if word not in phi_map:
            raise FileFormatError(f"phi is missing an image for {text!r}",
                                  path=path)
        images.append(phi_map.pop(word))
    if phi_map:
        raise FileFormatError("phi defines images outside the b1 list",
                              path=path)
    b2 = tuple(parse_base_word(t) for t in b2_texts)

    try:
        return HnnDecomposition(
            base=base,
            stable_letter=stable,
            b1_generators=b1,
            phi_images=tuple(images),
            b2_generators=b2,
            declared_b1_equals_base=TriState.parse(
                _expect(data, "b1_equals_base", str, path, default="unknown")),
            declared_b2_equals_base=TriState.parse(
                _expect(data, "b2_equals_base", str, path, default="unknown")),
            stable_exponent=exponent,
            ambient_flags=ambient_flags,
            base_oracle=oracle,
        )
    except InputRejected as exc:
        raise FileFormatError(str(exc), path=path) from None


# ---------------------------------------------------------------------------
# Writers


def _toml_string(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _toml_string_list(items) -> str:
    return "[" + ", ".join(_toml_string(x) for x in items) + "]"


def describe_family(oracle: WordOracle | None) -> list[str]:
    """TOML lines reconstructing the family declaration of an oracle."""
    if oracle is None:
        return ['family = "none"']
    if isinstance(oracle, FreeOracle):
        return ['family = "free"']
    if isinstance(oracle, FreeAbelianOracle):
        return ['family = "free_abelian"']
    if isinstance(oracle, BsOracle):
        return ['family = "bs"', f"n = {oracle.n}"]
    raise FileFormatError(
        "only free, free_abelian, and bs base families can be written back"
    )


def flags_toml(flags: GroupFlags) -> str:
    parts = []
    for file_key, field in (("no_free_subgroups", "no_nonabelian_free_subgroups"),
                            ("amenable", "amenable"),
                            ("claimed_kahler", "claimed_kahler"),
                            ("commutator_fg", "commutator_fg")):
        value: TriState = getattr(flags, field)
        if value is not TriState.UNKNOWN:
            parts.append(f"{file_key} = {_toml_string(value.value)}")
    return "{ " + ", ".join(parts) + " }" if parts else "{ }"


def write_decomposition(decomposition: HnnDecomposition) -> str:
    h = decomposition
    gens = h.base.generators
    lines = [
        f"stable_letter = {_toml_string(h.stable_letter)}",
        f"stable_exponent = {h.stable_exponent}",
        f"b1 = {_toml_string_list(format_word(w, gens) for w in h.b1_generators)}",
        f"b2 = {_toml_string_list(format_word(w, gens) for w in h.b2_generators)}",
        "phi = " + _toml_string_list(
            f"{format_word(w, gens)} -> {format_word(img, gens)}"
            for w, img in zip(h.b1_generators, h.phi_images)),
        f"b1_equals_base = {_toml_string(h.declared_b1_equals_base.value)}",
        f"b2_equals_base = {_toml_string(h.declared_b2_equals_base.value)}",
        f"flags = {flags_toml(h.ambient_flags)}",
        "",
        "[base]",
        f"generators = {_toml_string_list(gens)}",
        f"relators = {_toml_string_list(format_word(r, gens) for r in h.base.relators)}",
    ]
    lines.extend(describe_family(h.base_oracle))
    lines.append(f"flags = {flags_toml(h.base.flags)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Facts files


def load_facts(path: str | Path) -> list[SigmaFact]:
    """One fact per line: ``ray = (p, q); status = in|out; certificate = label``.

    Facts loaded from text carry user-axiom certificates: structural
    certificates only exist in-process, where they can be verified.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FileFormatError("file not found", path=str(path)) from None
    facts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = {}
        for segment in line.split(";"):
            if "=" not in segment:
                raise FileFormatError("expected 'key = value' segments",
                                      path=str(path), line=lineno)
            key, _, value = segment.partition("=")
            fields[key.strip()] = value.strip()
        if "ray" not in fields or "status" not in fields:
            raise FileFormatError("a fact needs ray and status fields",
                                  path=str(path), line=lineno)
        ray_text = fields["ray"].strip()
        if not (ray_text.startswith("(") and ray_text.endswith(")")):
            raise FileFormatError("ray looks like (p, q, ...)",
                                  path=str(path), line=lineno)
        try:
            values = tuple(int(x.strip()) for x in ray_text[1:-1].split(","))
            ray = ray_from_ints(values)
        except (ValueError, InputRejected):
            raise FileFormatError(f"invalid ray {ray_text!r}",
                                  path=str(path), line=lineno) from None
        status_text = fields["status"].lower()
        if status_text == "in":
            status = SigmaStatus.IN_SIGMA
        elif status_text == "out":
            status = SigmaStatus.NOT_IN_SIGMA
        else:
            raise FileFormatError("status must be 'in' or 'out'",
                                  path=str(path), line=lineno)
        label = fields.get("certificate", "user")
        facts.append(SigmaFact(ray, status, UserAxiom(label),
                               provenance=f"user axiom from {path}:{lineno}"))
    return facts


def write_facts(facts) -> str:
    lines = []
    for fact in facts:
        status = "in" if fact.status is SigmaStatus.IN_SIGMA else "out"
        ray = "(" + ", ".join(str(v) for v in fact.ray.values) + ")"
        lines.append(f"ray = {ray}; status = {status}; "
                     f"certificate = {fact.certificate.label}")
    return "\n".join(lines) + ("\n" if lines else "")
