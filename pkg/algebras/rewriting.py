"""
Paths, path polynomials and noncommutative Buchberger completion.

A path is a pair (source vertex, arrows) with the arrows listed in the order
they are traversed, so the written product b*a is the path (s, (a, b)).
Paths are ordered length-lexicographically on the arrow tuple, which is a
monomial order for concatenation. A polynomial is a dict path -> coefficient
whose paths are all parallel.
"""

import heapq
import logging
import random
from typing import Dict, List, Optional, Sequence, Tuple

from common.errors import NonAdmissible
from linalg.field import Field

logger = logging.getLogger(__name__)

Path = Tuple[int, Tuple[int, ...]]
Poly = Dict[Path, object]


def path_key(path: Path) -> Tuple:
    """Sort key: length, then arrows lexicographically, then source."""
    return (len(path[1]), path[1], path[0])


def path_target(path: Path, arrow_targets: Sequence[int]) -> int:
    return arrow_targets[path[1][-1]] if path[1] else path[0]


def leading_path(poly: Poly) -> Path:
    return max(poly, key=path_key)


def add_term(poly: Poly, path: Path, coeff):
    """poly[path] += coeff, dropping zeros."""
    value = poly.get(path)
    value = coeff if value is None else value + coeff
    if value:
        poly[path] = value
    else:
        poly.pop(path, None)


class Rule:
    """Rewrite rule lead -> tail, from a monic polynomial lead - tail."""

    def __init__(self, lead: Path, tail: Poly):
        self.lead = lead
        self.tail = tail

    @property
    def word(self) -> Tuple[int, ...]:
        return self.lead[1]

    def polynomial(self, field: Field) -> Poly:
        poly = {self.lead: field.one}
        for path, coeff in self.tail.items():
            poly[path] = -coeff
        return poly

    def __repr__(self):
        return f"<Rule {self.lead} -> {len(self.tail)} terms>"


class RewritingSystem:
    """
    Completed rewriting system for an admissible ideal of a path algebra.

    Args:
        field: Ground field
        arrow_sources: Source vertex of each arrow
        arrow_targets: Target vertex of each arrow
    """

    def __init__(self, field: Field, arrow_sources: Sequence[int], arrow_targets: Sequence[int]):
        self.field = field
        self.arrow_sources = list(arrow_sources)
        self.arrow_targets = list(arrow_targets)
        self.rules: List[Rule] = []
        self._by_first: Dict[int, List[Rule]] = {}

    # -------------------------------------------------------------------------
    # Reduction
    # -------------------------------------------------------------------------

    def _find(self, word: Tuple[int, ...]) -> Optional[Tuple[Rule, int]]:
        for i, arrow in enumerate(word):
            for rule in self._by_first.get(arrow, ()):
                length = len(rule.word)
                if word[i:i + length] == rule.word:
                    return rule, i
        return None

    def _find_all(self, word: Tuple[int, ...]) -> List[Tuple[Rule, int]]:
        found = []
        for i, arrow in enumerate(word):
            for rule in self._by_first.get(arrow, ()):
                length = len(rule.word)
                if word[i:i + length] == rule.word:
                    found.append((rule, i))
        return found

    def is_normal(self, word: Tuple[int, ...]) -> bool:
        return self._find(word) is None

    def ends_reducibly(self, word: Tuple[int, ...]) -> bool:
        """True if some rule word is a suffix of word."""
        for rule in self.rules:
            length = len(rule.word)
            if length <= len(word) and word[len(word) - length:] == rule.word:
                return True
        return False

    def _rewrite(self, path: Path, coeff, rule: Rule, position: int, out: Poly):
        source, word = path
        prefix = word[:position]
        suffix = word[position + len(rule.word):]
        for (_, tail_word), tail_coeff in rule.tail.items():
            add_term(out, (source, prefix + tail_word + suffix), coeff * tail_coeff)

    def reduce(self, poly: Poly, rng: Optional[random.Random] = None) -> Poly:
        """
        Normal form of a polynomial.

        With rng=None the largest reducible term is rewritten first using the
        first matching rule. With an rng, terms, rules and occurrences are
        picked at random; a confluent system gives the same result.
        """
        work: Poly = {}
        for path, coeff in poly.items():
            if coeff:
                add_term(work, path, coeff)
        result: Poly = {}
        while work:
            if rng is None:
                path = max(work, key=path_key)
                coeff = work.pop(path)
                match = self._find(path[1])
            else:
                path = rng.choice(sorted(work, key=path_key))
                coeff = work.pop(path)
                matches = self._find_all(path[1])
                match = rng.choice(matches) if matches else None
            if match is None:
                add_term(result, path, coeff)
            else:
                self._rewrite(path, coeff, match[0], match[1], work)
        return result

    # -------------------------------------------------------------------------
    # Completion
    # -------------------------------------------------------------------------

    def _install(self, rule: Rule):
        self.rules.append(rule)
        self._by_first.setdefault(rule.word[0], []).append(rule)

    def _remove(self, rule: Rule):
        self.rules.remove(rule)
        self._by_first[rule.word[0]].remove(rule)

    def _make_rule(self, poly: Poly) -> Rule:
        lead = leading_path(poly)
        inverse = self.field.one / poly[lead]
        tail = {p: -c * inverse for p, c in poly.items() if p != lead}
        return Rule(lead, tail)

    def _overlaps(self, first: Rule, second: Rule, word_cap: int) -> List[Poly]:
        """S-polynomials from a proper suffix of first.word equal to a prefix of second.word."""
        u, v = first.word, second.word
        out = []
        for k in range(1, min(len(u), len(v))):
            if k == len(u) or k == len(v) or u[len(u) - k:] != v[:k]:
                continue
            extension = v[k:]
            if len(u) + len(extension) > word_cap:
                continue
            prefix = u[:len(u) - k]
            spoly: Poly = {}
            for (src, w), c in first.polynomial(self.field).items():
                add_term(spoly, (src, w + extension), c)
            for (src, w), c in second.polynomial(self.field).items():
                add_term(spoly, (first.lead[0], prefix + w), -c)
            out.append(spoly)
        return out

    def complete(self, relations: List[Poly], path_length_cap: int):
        """
        Run Buchberger completion on the given generators.

        Overlaps are processed shortest first and skipped beyond twice the
        path length cap. Relations must be admissible.

        Raises:
            NonAdmissible: If a generator reduces to something with a term of
                length < 2
        """
        word_cap = 2 * path_length_cap
        pending: List[Poly] = [dict(r) for r in relations]
        pairs: List[Tuple[int, int, int, int]] = []
        counter = 0
        alive: Dict[int, Rule] = {}

        def push_pairs(rule_id: int):
            nonlocal counter
            for other_id in list(alive):
                for a, b in ((rule_id, other_id), (other_id, rule_id)):
                    first, second = alive[a], alive[b]
                    length = len(first.word) + len(second.word)
                    counter += 1
                    heapq.heappush(pairs, (length, counter, a, b))
                    if a == b:
                        break

        next_id = 0
        steps = 0
        while pending or pairs:
            if pending:
                candidates = [pending.pop()]
            else:
                _, _, a, b = heapq.heappop(pairs)
                if a not in alive or b not in alive:
                    continue
                candidates = self._overlaps(alive[a], alive[b], word_cap)
            for candidate in candidates:
                reduced = self.reduce(candidate)
                if not reduced:
                    continue
                for path in reduced:
                    if len(path[1]) < 2:
                        raise NonAdmissible(
                            f"Ideal contains an element with a term of length {len(path[1])}"
                        )
                rule = self._make_rule(reduced)
                # rules whose word contains the new word are superseded
                for rule_id, old in list(alive.items()):
                    if _contains(old.word, rule.word):
                        del alive[rule_id]
                        self._remove(old)
                        pending.append(old.polynomial(self.field))
                self._install(rule)
                alive[next_id] = rule
                push_pairs(next_id)
                next_id += 1
                steps += 1
        for rule in self.rules:
            rule.tail = self.reduce(rule.tail)
        self.rules.sort(key=lambda r: path_key(r.lead))
        logger.debug(f"Completion finished with {len(self.rules)} rules after {steps} insertions")


def _contains(word: Tuple[int, ...], sub: Tuple[int, ...]) -> bool:
    n = len(sub)
    return any(word[i:i + n] == sub for i in range(len(word) - n + 1))
