"""Provenance-tracked bounds on N(d) and M(k, d).

N(d) is the largest n for which a minimal-support AME(n, d) state exists (the
set of such n is an interval starting at 2). M(k, d) is the largest length of
an MDS code of dimension k over d symbols.

Facts come from three places: constructions run and verified in-process,
shipped search certificates, and a JSON file of literature results tagged by
citation. Derivations record their premises so every bound can be traced
back. Facts that assume the general MDS conjecture are only produced by
:func:`conditional_n_upper_prime_power` and never enter a :class:`BoundReport`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .finite_field import factor_prime_power, is_prime_power

CONSTRUCTED = "constructed-and-verified"
SEARCHED = "searched-and-verified"
EXTERNAL = "external-citation"
DERIVED = "derived"
ASSUMED = "assumed"

_RANK = {CONSTRUCTED: 0, SEARCHED: 0, DERIVED: 1, EXTERNAL: 2, ASSUMED: 3}


class BoundsError(ValueError):
    pass


class ConjectureFlagRequired(BoundsError):
    pass


@dataclass(frozen=True)
class BoundFact:
    subject: str
    relation: str
    value: int
    provenance: str
    citation: str | None = None
    rule: str | None = None
    premises: tuple[BoundFact, ...] = ()
    artifact: str | None = None
    conditional: bool = False
    min_distance_at_least: int | None = None
    note: str = ""

    def __post_init__(self):
        if self.relation not in ("<=", ">=", "="):
            raise BoundsError(f"bad relation {self.relation!r}")
        if self.provenance in (CONSTRUCTED, SEARCHED) and not self.artifact:
            raise BoundsError("verified facts must reference an artifact")
        if self.provenance in (EXTERNAL, ASSUMED) and not self.citation:
            raise BoundsError("external facts need a citation tag")
        if self.provenance == DERIVED and not (self.rule and self.premises):
            raise BoundsError("derived facts need a rule and premises")

    @property
    def is_upper(self) -> bool:
        return self.relation in ("<=", "=")

    @property
    def is_lower(self) -> bool:
        return self.relation in (">=", "=")

    @property
    def verified(self) -> bool:
        if self.provenance in (CONSTRUCTED, SEARCHED):
            return True
        if self.provenance == DERIVED:
            return all(p.verified for p in self.premises)
        return False

    def tainted(self) -> bool:
        return self.conditional or any(p.tainted() for p in self.premises)

    def rank(self) -> int:
        own = _RANK[self.provenance]
        return max([own] + [p.rank() for p in self.premises])

    def statement(self) -> str:
        return f"{self.subject} {self.relation} {self.value}"

    def label(self) -> str:
        if self.provenance in (EXTERNAL, ASSUMED):
            return f"{self.provenance} [{self.citation}]"
        if self.provenance == DERIVED:
            return f"derived by {self.rule}"
        return f"{self.provenance} ({self.artifact})"

    def trace_lines(self, indent: int = 0) -> list[str]:
        lines = ["  " * indent + f"{self.statement()}  <- {self.label()}"]
        if self.note:
            lines.append("  " * indent + f"  note: {self.note}")
        for p in self.premises:
            lines.extend(p.trace_lines(indent + 1))
        return lines

    def to_json(self) -> dict:
        out = {"subject": self.subject, "relation": self.relation, "value": self.value,
               "provenance": self.provenance, "verified": self.verified}
        for key in ("citation", "rule", "artifact", "min_distance_at_least"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        if self.conditional:
            out["conditional"] = True
        if self.note:
            out["note"] = self.note
        if self.premises:
            out["premises"] = [p.to_json() for p in self.premises]
        return out


@dataclass
class BoundReport:
    d: int
    lower: BoundFact | None
    upper: BoundFact | None
    facts: list[BoundFact] = field(default_factory=list)

    def __post_init__(self):
        for f in [self.lower, self.upper, *self.facts]:
            if f is not None and f.tainted():
                raise BoundsError("conditional fact leaked into an unconditional report")
        if self.lower and self.upper and self.lower.value > self.upper.value:
            raise BoundsError(f"inconsistent facts for N({self.d}): "
                              f"{self.lower.statement()} vs {self.upper.statement()}")

    @property
    def exact(self) -> int | None:
        if self.lower and self.upper and self.lower.value == self.upper.value:
            return self.lower.value
        return None

    def trace_lines(self) -> list[str]:
        lines = [f"N({self.d}): lower {self.lower.value if self.lower else '-'}, "
                 f"upper {self.upper.value if self.upper else '-'}"]
        for tag, f in (("lower", self.lower), ("upper", self.upper)):
            if f is not None:
                lines.append(f"best {tag}:")
                lines.extend(f.trace_lines(1))
        return lines

    def to_json(self, trace: bool = False) -> dict:
        out = {
            "d": self.d,
            "lower": self.lower.value if self.lower else None,
            "upper": self.upper.value if self.upper else None,
            "exact": self.exact,
            "lower_fact": self.lower.to_json() if self.lower else None,
            "upper_fact": self.upper.to_json() if self.upper else None,
        }
        if trace:
            out["trace"] = [f.to_json() for f in self.facts]
        return out


# -- fact file ----------------------------------------------------------------------

_EXPR = re.compile(r"^\s*(\d*)\s*d\s*(?:([+-])\s*(\d+))?\s*$")


def _eval_value(expr, d: int) -> int:
    if isinstance(expr, int):
        return expr
    s = str(expr).strip()
    if s.lstrip("-").isdigit():
        return int(s)
    m = _EXPR.match(s)
    if not m:
        raise BoundsError(f"cannot read value expression {expr!r}")
    coef = int(m.group(1)) if m.group(1) else 1
    off = int(m.group(3) or 0) * (-1 if m.group(2) == "-" else 1)
    return coef * d + off


_SUBJECT = re.compile(r"^(N|M)\((.*)\)$")


def _entry_applies(entry: dict, d: int) -> bool:
    if "d_min" in entry and d < entry["d_min"]:
        return False
    if "d_in" in entry and d not in entry["d_in"]:
        return False
    if "d_not_in" in entry and d in entry["d_not_in"]:
        return False
    return True


def instantiate(entries: list[dict], d: int, k_max: int | None = None) -> list[BoundFact]:
    """External facts about N(d) and M(k, d) for this d."""
    k_max = k_max if k_max is not None else 2 * d + 2
    out = []
    for e in entries:
        m = _SUBJECT.match(e["subject"].replace(" ", ""))
        if not m:
            raise BoundsError(f"bad subject {e['subject']!r}")
        kind, args = m.group(1), m.group(2).split(",")
        if not _entry_applies(e, d):
            continue
        common = dict(relation=e["relation"], provenance=EXTERNAL, citation=e["provenance"],
                      min_distance_at_least=e.get("min_distance_at_least"), note=e.get("note", ""))
        if kind == "N":
            if args[0] not in ("d", str(d)):
                continue
            out.append(BoundFact(subject=f"N({d})", value=_eval_value(e["value"], d), **common))
            continue
        k_arg, d_arg = args
        if d_arg not in ("d", str(d)):
            continue
        v = _eval_value(e["value"], d)
        # a length-v MDS code has dimension at most v-1 once the distance is >= 2
        ks = range(e.get("k_min", 1), min(k_max, v - 1) + 1) if k_arg == "k" else [int(k_arg)]
        for k in ks:
            out.append(BoundFact(subject=f"M({k},{d})", value=v, **common))
    return out


@lru_cache(maxsize=None)
def _default_entries_text() -> str:
    return resources.files("amemin").joinpath("data/facts.json").read_text()


def load_facts(path: str | None = None) -> list[dict]:
    if path is None:
        return json.loads(_default_entries_text())
    with open(path) as fh:
        return json.load(fh)


def certificate_path(order: int):
    return resources.files("amemin").joinpath(f"data/certificates/order-{order}.json")


def load_certificate(order: int):
    from .search import SearchCertificate

    p = certificate_path(order)
    if not p.is_file():
        return None
    return SearchCertificate.from_json(json.loads(p.read_text()))


# -- lower bounds -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _verified_construction(n: int, d: int) -> bool:
    from .ame import state_from_code, verify_ame_combinatorial
    from .rs import mds_code_for

    C = mds_code_for(n, d)
    return C is not None and verify_ame_combinatorial(state_from_code(C)).is_ame


def constructive_lower_facts(d: int) -> list[BoundFact]:
    """Every constructive lower bound on N(d), each verified in-process."""
    if d < 2:
        raise BoundsError("d must be at least 2")
    facts = []
    if _verified_construction(3, d):
        facts.append(BoundFact(f"N({d})", ">=", 3, CONSTRUCTED, artifact=f"ghz_code(3, {d})",
                               note="repetition code; combinatorial AME check passed"))
    pm = factor_prime_power(d)
    if pm is not None and d >= 3 and _verified_construction(d + 1, d):
        facts.append(BoundFact(f"N({d})", ">=", d + 1, CONSTRUCTED,
                               artifact=f"ame_code_for_prime_power({d})",
                               note=f"singly extended Reed-Solomon code, k = {(d + 1) // 2}"))
    if pm is not None and pm[0] == 2 and d + 2 >= 6 > d + 1 and _verified_construction(6, d):
        facts.append(BoundFact(f"N({d})", ">=", 6, CONSTRUCTED,
                               artifact=f"rs_code(RsParams(make_field({d}), 3, 'double'))",
                               note="doubly extended Reed-Solomon code, k = 3"))
    return facts


def _best(facts: list[BoundFact], lower: bool) -> BoundFact | None:
    pool = [f for f in facts if (f.is_lower if lower else f.is_upper)]
    if not pool:
        return None
    return min(pool, key=lambda f: ((-f.value if lower else f.value), f.rank()))


def n_lower_constructive(d: int) -> BoundFact:
    return _best(constructive_lower_facts(d), lower=True)


# -- upper bounds -------------------------------------------------------------------

def derive_n_upper_from_M(k: int, d: int, fact: BoundFact) -> BoundFact | None:
    """Turn ``M(k, d) <= v`` into an upper bound on N(d).

    An MDS code of length n' > v and dimension k would puncture down to one
    of length v+1, so none exists. A minimal-support AME(n, d) state needs an
    MDS code of length n and dimension n//2, so every n with n//2 == k and
    n > v is excluded, and by the interval property N(d) <= (least such n) - 1.
    Returns None when no n qualifies.
    """
    if fact.subject != f"M({k},{d})" or not fact.is_upper:
        raise BoundsError(f"expected an upper bound on M({k},{d}), got {fact.statement()}")
    v = fact.value
    if v < k + 1:
        raise BoundsError(f"M({k},{d}) >= {k + 1} always (parity code); {fact.statement()} is inconsistent")
    excluded = [n for n in (2 * k, 2 * k + 1) if n > v]
    if not excluded:
        return None
    n_min = min(excluded)
    if fact.min_distance_at_least is not None:
        # the cited result only covers codes of length v+1 with this distance
        if (v + 1) - k + 1 < fact.min_distance_at_least:
            return None
    return BoundFact(
        f"N({d})", "<=", n_min - 1, DERIVED,
        rule=f"puncturing: no MDS code of length {v + 1}, dimension {k}; "
             f"AME({n_min},{d}) would need one of length {n_min}",
        premises=(fact,),
        conditional=fact.conditional,
    )


def search_upper_facts(d: int) -> list[BoundFact]:
    """N(d) <= 3 from a shipped exhaustive order-d search with no orthogonal pair."""
    cert = load_certificate(d)
    if cert is None or cert.verdict != "not-exists" or not cert.exhaustive:
        return []
    return [BoundFact(f"N({d})", "<=", 3, SEARCHED, artifact=f"data/certificates/order-{d}.json",
                      note=f"{cert.squares_examined} reduced squares of order {d}, none with an orthogonal "
                           f"mate, so no AME(4,{d}) of minimal support")]


def upper_facts(d: int, entries: list[dict]) -> list[BoundFact]:
    facts = search_upper_facts(d)
    for f in instantiate(entries, d):
        if f.subject.startswith("N("):
            if f.is_upper:
                facts.append(f)
        elif f.is_upper:
            k = int(f.subject[2:].split(",")[0])
            derived = derive_n_upper_from_M(k, d, f)
            if derived is not None:
                facts.append(derived)
    return facts


def n_report(d: int, facts_path: str | None = None) -> BoundReport:
    entries = load_facts(facts_path)
    lowers = constructive_lower_facts(d)
    lowers += [f for f in instantiate(entries, d) if f.subject == f"N({d})" and f.is_lower]
    uppers = upper_facts(d, entries)
    all_facts = lowers + uppers
    return BoundReport(d, _best(all_facts, lower=True), _best(all_facts, lower=False), all_facts)


def conditional_n_upper_prime_power(d: int, assume_general_mds_conjecture: bool = False) -> BoundFact:
    """N(d) = d+1 for prime powers d >= 8, assuming the general MDS conjecture.

    With k = (d+2)//2 we have 3 < k < d-1, where the conjecture gives
    M(k, d) = d+1. The result is marked conditional.
    """
    if not assume_general_mds_conjecture:
        raise ConjectureFlagRequired("this bound assumes the general MDS conjecture; set the flag explicitly")
    if not is_prime_power(d) or d < 8:
        raise BoundsError("needs a prime power d >= 8")
    k = (d + 2) // 2
    assert 3 < k < d - 1
    assumed = BoundFact(f"M({k},{d})", "=", d + 1, ASSUMED, citation="general-mds-conjecture",
                        conditional=True, note=f"k = {k} is not in {{3, {d - 1}}}")
    upper = derive_n_upper_from_M(k, d, assumed)
    lower = n_lower_constructive(d)
    if upper is None or upper.value != lower.value:
        raise AssertionError("conditional derivation did not close the gap")
    return BoundFact(f"N({d})", "=", d + 1, DERIVED, rule="constructive lower bound meets conditional upper bound",
                     premises=(lower, upper), conditional=True)
