"""
Permutations, words, the containment order and named permutation families.

Permutations use 1-based one-line notation throughout. Every value here is
immutable and every function is pure.
"""

import itertools
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    TypeVar,
    Union,
)

from permprofile.core.errors import (
    ArityError,
    DomainError,
    InvalidWordError,
    ResourceError,
)
from permprofile.core.settings import DEFAULT_SETTINGS, Settings

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass(frozen=True, order=True)
class Permutation:
    """
    A permutation of 1..n in one-line notation.

    The empty permutation is allowed; it is the identity of the direct and
    skew sums.
    """

    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise InvalidWordError(
                f"{values} is not a permutation of 1..{len(values)}"
            )

    @classmethod
    def of(cls, *values: int) -> "Permutation":
        """Build a permutation from its values, e.g. Permutation.of(3, 1, 4, 2)."""
        return cls(tuple(values))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """
        Parse one-line notation.

        Accepts space- or comma-separated values ("3 1 4 2", "11,9,12,10") and,
        for permutations of length at most 9, the compact form "3142".

        Raises:
            InvalidWordError: If the text is not a permutation
        """
        tokens = [token for token in re.split(r"[\s,]+", text.strip()) if token]
        if len(tokens) == 1 and len(tokens[0]) > 1:
            tokens = list(tokens[0])
        try:
            return cls(tuple(int(token) for token in tokens))
        except ValueError as e:
            raise InvalidWordError(f"Cannot parse permutation {text!r}: {e}") from e

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __call__(self, i: int) -> int:
        """The value at 1-based position i."""
        return self.values[i - 1]

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.values)

    def compact(self) -> str:
        """Digits run together when every value is below 10, else the spaced form."""
        if len(self) < 10:
            return "".join(str(v) for v in self.values)
        return str(self)


EMPTY = Permutation(())


@dataclass(frozen=True)
class IntegerWord:
    """A nonempty word of pairwise distinct integers."""

    letters: Tuple[int, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise InvalidWordError("Cannot reduce the empty word")
        if len(set(letters)) != len(letters):
            raise InvalidWordError(f"Word {letters} has repeated letters")


def reduce(word: Union[IntegerWord, Sequence[int]]) -> Permutation:
    """
    Replace each letter of a word by its rank.

    Args:
        word: An IntegerWord or any sequence of distinct integers

    Returns:
        The permutation with the same relative order

    Raises:
        InvalidWordError: If the word is empty or has repeated letters
    """
    if not isinstance(word, IntegerWord):
        word = IntegerWord(tuple(word))
    ranks = {letter: rank for rank, letter in enumerate(sorted(word.letters), start=1)}
    return Permutation(tuple(ranks[letter] for letter in word.letters))


def _reduce_values(values: Sequence[int]) -> Tuple[int, ...]:
    ranks = {v: r for r, v in enumerate(sorted(values), start=1)}
    return tuple(ranks[v] for v in values)


def _neighbour_positions(values: Sequence[int]) -> Tuple[List[int], List[int]]:
    """
    For every position t, the earlier positions holding the nearest smaller
    and nearest larger value (-1 when there is none).
    """
    below: List[int] = []
    above: List[int] = []
    for t, v in enumerate(values):
        lower, upper = -1, -1
        for s in range(t):
            w = values[s]
            if w < v and (lower < 0 or w > values[lower]):
                lower = s
            if w > v and (upper < 0 or w < values[upper]):
                upper = s
        below.append(lower)
        above.append(upper)
    return below, above


def contains(p: Permutation, q: Permutation) -> bool:
    """
    Decide whether p contains a q pattern (q <= p).

    Occurrences are searched by backtracking over increasing index tuples.
    Each new index must carry a value strictly between the values already
    matched to q's nearest smaller and nearest larger earlier entries.

    Args:
        p: The text permutation
        q: The pattern

    Returns:
        True iff some subsequence of p reduces to q
    """
    n, k = len(p), len(q)
    if k > n:
        return False
    if k == 0:
        return True
    if k == n:
        return p == q

    text = p.values
    below, above = _neighbour_positions(q.values)
    chosen = [0] * k

    def place(t: int, start: int) -> bool:
        if t == k:
            return True
        lo = text[chosen[below[t]]] if below[t] >= 0 else 0
        hi = text[chosen[above[t]]] if above[t] >= 0 else n + 1
        for i in range(start, n - (k - t) + 1):
            if lo < text[i] < hi:
                chosen[t] = i
                if place(t + 1, i + 1):
                    return True
        return False

    return place(0, 0)


def direct_sum(p: Permutation, other: Permutation) -> Permutation:
    """p ⊕ other: other placed above and to the right of p."""
    m = len(p)
    return Permutation(p.values + tuple(v + m for v in other.values))


def skew_sum(p: Permutation, other: Permutation) -> Permutation:
    """p ⊖ other: other placed below and to the right of p."""
    n = len(other)
    return Permutation(tuple(v + n for v in p.values) + other.values)


def inverse(p: Permutation) -> Permutation:
    """Group-theoretic inverse; transposes the permutation matrix."""
    result = [0] * len(p)
    for i, v in enumerate(p.values, start=1):
        result[v - 1] = i
    return Permutation(tuple(result))


def reverse(p: Permutation) -> Permutation:
    """Read p right to left; mirrors the permutation matrix left-right."""
    return Permutation(tuple(reversed(p.values)))


def complement(p: Permutation) -> Permutation:
    """Replace each value v by n+1-v; mirrors the permutation matrix top-bottom."""
    n = len(p)
    return Permutation(tuple(n + 1 - v for v in p.values))


SYMMETRY_MAPS: Dict[str, Callable[[Permutation], Permutation]] = {
    "identity": lambda p: p,
    "reverse": reverse,
    "complement": complement,
    "reverse-complement": lambda p: reverse(complement(p)),
    "inverse": inverse,
    "inverse-reverse": lambda p: inverse(reverse(p)),
    "inverse-complement": lambda p: inverse(complement(p)),
    "inverse-reverse-complement": lambda p: inverse(reverse(complement(p))),
}


def symmetry_maps() -> Dict[str, Callable[[Permutation], Permutation]]:
    """The eight symmetries of the square acting on permutation matrices, by name."""
    return dict(SYMMETRY_MAPS)


def symmetries(p: Permutation) -> FrozenSet[Permutation]:
    """The orbit of p under the eight symmetries of the square."""
    return frozenset(sigma(p) for sigma in SYMMETRY_MAPS.values())


def relating_symmetry(p: Permutation, q: Permutation) -> Optional[str]:
    """Name of the first symmetry taking p to q, or None if q is not in p's orbit."""
    for name, sigma in SYMMETRY_MAPS.items():
        if sigma(p) == q:
            return name
    return None


def wreath(p: Permutation, blocks: Sequence[Permutation]) -> Permutation:
    """
    Inflate every entry of p into an interval patterned by the matching block.

    Args:
        p: The skeleton permutation
        blocks: One nonempty permutation per entry of p

    Returns:
        p ≀ (q_1, ..., q_n)

    Raises:
        ArityError: If the number of blocks differs from |p|
        DomainError: If a block is empty
    """
    if len(blocks) != len(p):
        raise ArityError(
            f"wreath of a length-{len(p)} permutation needs {len(p)} blocks, got {len(blocks)}"
        )
    if any(len(q) == 0 for q in blocks):
        raise DomainError("wreath blocks must be nonempty permutations")

    offsets: Dict[int, int] = {}
    running = 0
    for position in inverse(p).values:
        offsets[position] = running
        running += len(blocks[position - 1])

    values: List[int] = []
    for position, q in enumerate(blocks, start=1):
        values.extend(v + offsets[position] for v in q.values)
    return Permutation(tuple(values))


def intervals(p: Permutation) -> List[Tuple[int, int]]:
    """
    All nontrivial intervals of p.

    Returns:
        Sorted 1-based inclusive index ranges (i, j) with 1 < j-i+1 < n whose
        values form a set of consecutive integers
    """
    n = len(p)
    found: List[Tuple[int, int]] = []
    for i in range(n):
        lo = hi = p.values[i]
        for j in range(i + 1, n):
            v = p.values[j]
            lo, hi = min(lo, v), max(hi, v)
            length = j - i + 1
            if length >= n:
                break
            if hi - lo + 1 == length:
                found.append((i + 1, j + 1))
    return found


def is_simple(p: Permutation) -> bool:
    """True iff p has no nontrivial interval."""
    return not intervals(p)


def deletions(p: Permutation) -> List[Permutation]:
    """The distinct reduced permutations obtained by deleting one entry of p."""
    found: Set[Tuple[int, ...]] = set()
    for i in range(len(p)):
        found.add(_reduce_values(p.values[:i] + p.values[i + 1:]))
    return sorted(Permutation(values) for values in found)


def _check_bound(n: int, settings: Settings) -> None:
    if n > settings.exhaustive_bound:
        raise ResourceError(
            f"Length {n} exceeds the exhaustive bound {settings.exhaustive_bound}; "
            f"raise it explicitly to enumerate {n}! permutations"
        )


def all_permutations(n: int, settings: Settings = DEFAULT_SETTINGS) -> Iterator[Permutation]:
    """
    Every permutation of length n in lexicographic order.

    Raises:
        ResourceError: If n exceeds the exhaustive bound
    """
    _check_bound(n, settings)
    for values in itertools.permutations(range(1, n + 1)):
        yield Permutation(values)


def parallel_filter(
    predicate: Callable[[T], bool], candidates: Iterable[T], threads: int = 1
) -> List[T]:
    """Keep the candidates satisfying predicate, preserving their order."""
    items = list(candidates)
    if threads <= 1:
        return [item for item in items if predicate(item)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        verdicts = list(pool.map(predicate, items))
    return [item for item, keep in zip(items, verdicts) if keep]


def avoiders(
    patterns: Iterable[Permutation], n: int, settings: Settings = DEFAULT_SETTINGS
) -> List[Permutation]:
    """
    The length-n permutations avoiding every member of patterns.

    Returns:
        A(X) ∩ S_n, lexicographically sorted

    Raises:
        ResourceError: If n exceeds the exhaustive bound
    """
    basis = list(patterns)
    return parallel_filter(
        lambda p: not any(contains(p, x) for x in basis),
        all_permutations(n, settings),
        settings.threads,
    )


def closure_up_to(
    generators: Iterable[Permutation], n: int, settings: Settings = DEFAULT_SETTINGS
) -> List[Permutation]:
    """
    Every nonempty permutation of length at most n contained in a member of generators.

    Returns:
        cl(X) truncated at length n, sorted

    Raises:
        ResourceError: If n exceeds the exhaustive bound
    """
    _check_bound(n, settings)
    found: Set[Tuple[int, ...]] = set()
    for x in generators:
        for k in range(1, min(n, len(x)) + 1):
            for positions in itertools.combinations(range(len(x)), k):
                found.add(_reduce_values([x.values[i] for i in positions]))
    return sorted(Permutation(values) for values in found)


def in_strong_completion(
    p: Permutation, generators: Iterable[Permutation], sum_only: bool = False
) -> bool:
    """
    Decide membership in the strong (or sum) completion of a finite set.

    p is a member iff it is a generator, or splits as q ⊕ r (or, unless
    sum_only, q ⊖ r) with both halves members.

    Args:
        p: The permutation to test
        generators: The finite set X
        sum_only: Restrict to direct sums (the sum completion)

    Returns:
        True iff p lies in the completion
    """
    members = frozenset(x.values for x in generators)

    @lru_cache(maxsize=None)
    def member(values: Tuple[int, ...]) -> bool:
        if values in members:
            return True
        n = len(values)
        prefix_max, prefix_min = 0, n + 1
        for k in range(1, n):
            prefix_max = max(prefix_max, values[k - 1])
            prefix_min = min(prefix_min, values[k - 1])
            if prefix_max == k:
                if member(values[:k]) and member(tuple(v - k for v in values[k:])):
                    return True
            if not sum_only and prefix_min == n - k + 1:
                if member(tuple(v - (n - k) for v in values[:k])) and member(values[k:]):
                    return True
        return False

    if len(p) == 0:
        return False
    return member(p.values)


def is_separable(p: Permutation) -> bool:
    """Separable permutations: the strong completion of the single permutation 1."""
    return in_strong_completion(p, [Permutation.of(1)])


def is_layered(p: Permutation) -> bool:
    """Layered permutations: the sum completion of the chain 1, 21, 321, ..."""
    chain = [Permutation(tuple(range(k, 0, -1))) for k in range(1, len(p) + 1)]
    return in_strong_completion(p, chain, sum_only=True)


# A(p) is partially well-ordered exactly for these p; documented, not derived.
PWO_SINGLE_AVOIDERS: FrozenSet[Permutation] = frozenset(
    Permutation.parse(text) for text in ("1", "12", "21", "132", "213", "231", "312")
)


def _require_positive(k: int, name: str) -> None:
    if k < 1:
        raise DomainError(f"{name} needs k >= 1, got {k}")


def d_parallel(k: int) -> Permutation:
    """d_k = 2,4,...,2k,1,3,...,2k-1."""
    _require_positive(k, "d_parallel")
    return Permutation(tuple(range(2, 2 * k + 1, 2)) + tuple(range(1, 2 * k, 2)))


def z_sequence(k: int) -> Permutation:
    """z_1 = 3142 and z_k = z_{k-1} ≀ (3142, ..., 3142)."""
    _require_positive(k, "z_sequence")
    base = Permutation.of(3, 1, 4, 2)
    z = base
    for _ in range(k - 1):
        z = wreath(z, [base] * len(z))
    return z


def increasing_oscillation(k: int) -> Permutation:
    """The reduction of the first 2k terms of 4,1,6,3,8,5,10,7,..."""
    _require_positive(k, "increasing_oscillation")
    terms: List[int] = []
    for m in range(1, k + 1):
        terms.extend((2 * m + 2, 2 * m - 1))
    return reduce(terms)
