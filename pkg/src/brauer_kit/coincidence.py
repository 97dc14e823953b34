"""Coincidence statistics and the Friedman ciphertext-only attack.

Indices of coincidence are exact rationals; decimals appear only when
rendering reports.  The attack splits a ciphertext into candidate decimated
lists, scores key lengths by how close the per-list indices come to the
English target 0.065, recovers shift differences from mutual indices, and
ranks the anchored keys by a chi-squared fit of the decryption.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .cipher import Alphabet, CipherError, DEFAULT_ALPHABET, VigenereKey, vigenere_decrypt

# Relative letter frequencies of English text, in percent.
ENGLISH_FREQUENCIES = {
    "A": 8.167, "B": 1.492, "C": 2.782, "D": 4.253, "E": 12.702, "F": 2.228,
    "G": 2.015, "H": 6.094, "I": 6.966, "J": 0.153, "K": 0.772, "L": 4.025,
    "M": 2.406, "N": 6.749, "O": 7.507, "P": 1.929, "Q": 0.095, "R": 5.987,
    "S": 6.327, "T": 9.056, "U": 2.758, "V": 0.978, "W": 2.360, "X": 0.150,
    "Y": 1.974, "Z": 0.074,
}

IOC_TARGET = Fraction(65, 1000)
IOC_WINDOW = Fraction(1, 100)


def letter_counts(text: str, alphabet: Alphabet = DEFAULT_ALPHABET) -> list[int]:
    counts = Counter(text)
    unknown = set(counts) - set(alphabet.symbols)
    if unknown:
        raise CipherError(f"characters {sorted(unknown)} are not in the alphabet")
    return [counts.get(ch, 0) for ch in alphabet.symbols]


def index_of_coincidence(text: str, alphabet: Alphabet = DEFAULT_ALPHABET) -> Fraction:
    """Probability that two random positions of ``text`` hold the same
    character: sum f(f-1) / (N(N-1))."""
    n = len(text)
    if n < 2:
        raise CipherError("index of coincidence needs a text of length >= 2")
    num = sum(f * (f - 1) for f in letter_counts(text, alphabet))
    return Fraction(num, n * (n - 1))


def mutual_index(t1: str, t2: str, alphabet: Alphabet = DEFAULT_ALPHABET) -> Fraction:
    """Probability that a random character of ``t1`` equals one of ``t2``."""
    return mutual_index_shift(t1, t2, 0, alphabet)


def mutual_index_shift(
    t1: str, t2: str, shift: int, alphabet: Alphabet = DEFAULT_ALPHABET
) -> Fraction:
    """Mutual index of ``t1`` against ``t2`` decrypted by ``shift``.

    The maximizing shift estimates the key difference k1 - k2 when both
    texts are shift encryptions of same-language plaintexts.
    """
    if not t1 or not t2:
        raise CipherError("mutual index needs two non-empty texts")
    f1 = letter_counts(t1, alphabet)
    f2 = letter_counts(t2, alphabet)
    n = alphabet.size
    num = sum(f1[i] * f2[(i - shift) % n] for i in range(n))
    return Fraction(num, len(t1) * len(t2))


def decimate(text: str, m: int) -> list[str]:
    """Split ``text`` into m lists; list i takes positions i, i+m, i+2m, ..."""
    if m < 1:
        raise CipherError("list count must be >= 1")
    return [text[i::m] for i in range(m)]


def chi_squared(
    text: str,
    alphabet: Alphabet = DEFAULT_ALPHABET,
    expected: Mapping[str, float] = ENGLISH_FREQUENCIES,
) -> float:
    """Chi-squared statistic of ``text`` against an expected distribution."""
    if not text:
        raise CipherError("chi-squared needs a non-empty text")
    counts = letter_counts(text, alphabet)
    n = len(text)
    score = 0.0
    for i, ch in enumerate(alphabet.symbols):
        exp = n * expected.get(ch, 0.0) / 100.0
        if exp <= 0:
            continue
        score += (counts[i] - exp) ** 2 / exp
    return score


@dataclass(frozen=True)
class CoincidenceReport:
    """Coincidence statistics of a ciphertext under an assumed key length:
    the whole-text index, one index per decimated list, and the full mutual
    index table over list pairs and shifts."""

    text_ioc: Fraction
    per_list_ioc: tuple[Fraction, ...]
    mic_table: dict  # (i, j) -> tuple of one mutual index per shift


def coincidence_report(
    cipher: str, m: int, alphabet: Alphabet = DEFAULT_ALPHABET
) -> CoincidenceReport:
    lists = decimate(cipher, m)
    if any(len(part) < 2 for part in lists):
        raise CipherError(f"splitting into {m} lists leaves a list shorter than 2")
    table = {
        (i, j): tuple(
            mutual_index_shift(lists[i], lists[j], s, alphabet)
            for s in range(alphabet.size)
        )
        for i in range(m)
        for j in range(i + 1, m)
    }
    return CoincidenceReport(
        text_ioc=index_of_coincidence(cipher, alphabet),
        per_list_ioc=tuple(index_of_coincidence(part, alphabet) for part in lists),
        mic_table=table,
    )


# ---------------------------------------------------------------------------
# Key length estimation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KeyLengthCandidate:
    m: int
    per_list_ioc: tuple[Fraction, ...]
    score: Fraction  # mean |ioc - target| over the m lists
    in_window: int   # lists with |ioc - target| <= IOC_WINDOW
    related: tuple[int, ...] = ()  # other flagged lengths in divisor relation

    @property
    def flagged(self) -> bool:
        return self.in_window == self.m


def friedman_keylength(
    cipher: str, max_len: int, alphabet: Alphabet = DEFAULT_ALPHABET
) -> list[KeyLengthCandidate]:
    """Rank candidate key lengths 1..max_len by mean |IoC - 0.065|.

    Candidates are sorted by ascending score, ties by smaller length.  When
    several flagged lengths divide one another (a key length and its
    multiples explain the same text equally well), each carries the others
    in ``related`` rather than being dropped.
    """
    if max_len < 1:
        raise CipherError("max_len must be >= 1")
    if len(cipher) < 2 * max_len:
        raise CipherError(
            f"ciphertext of length {len(cipher)} is too short for key lengths up to {max_len}"
        )
    raw: list[KeyLengthCandidate] = []
    for m in range(1, max_len + 1):
        iocs = tuple(index_of_coincidence(part, alphabet) for part in decimate(cipher, m))
        deviations = [abs(i - IOC_TARGET) for i in iocs]
        score = sum(deviations, Fraction(0)) / m
        in_window = sum(1 for d in deviations if d <= IOC_WINDOW)
        raw.append(KeyLengthCandidate(m, iocs, score, in_window))
    flagged = {c.m for c in raw if c.flagged}
    candidates = [
        KeyLengthCandidate(
            c.m, c.per_list_ioc, c.score, c.in_window,
            tuple(sorted(
                other for other in flagged
                if other != c.m and (other % c.m == 0 or c.m % other == 0)
            )) if c.flagged else (),
        )
        for c in raw
    ]
    return sorted(candidates, key=lambda c: (c.score, c.m))


# ---------------------------------------------------------------------------
# Key recovery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KeyCandidate:
    key: str
    chi2: float


@dataclass(frozen=True)
class KeyRecovery:
    m: int
    differences: tuple[tuple[int, int, int], ...]  # (i, j, k_i - k_j mod n)
    residuals: tuple[tuple[int, int, int], ...]    # pairs inconsistent with the star solution
    candidates: tuple[KeyCandidate, ...]           # ranked by chi-squared, best first


def solve_shift_differences(
    m: int,
    differences: Mapping[tuple[int, int], int],
    anchor: int = 0,
    modulus: int = 26,
) -> tuple[tuple[int, ...], list[tuple[int, int, int]]]:
    """Solve k_i - k_j = d[(i, j)] (mod modulus) with k_0 = anchor.

    Returns the residue vector and the list of constraints the solution
    violates, as (i, j, residual) with residual = d - (k_i - k_j) mod n.
    Unreached positions are an error.
    """
    residues: dict[int, int] = {0: anchor % modulus}
    adjacency: dict[int, list[tuple[int, int]]] = {}
    for (i, j), d in differences.items():
        if not (0 <= i < m and 0 <= j < m) or i == j:
            raise CipherError(f"difference pair ({i}, {j}) out of range")
        adjacency.setdefault(i, []).append((j, -d))  # k_j = k_i - d
        adjacency.setdefault(j, []).append((i, d))   # k_i = k_j + d
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j, delta in adjacency.get(i, []):
            if j not in residues:
                residues[j] = (residues[i] + delta) % modulus
                frontier.append(j)
    if len(residues) < m:
        missing = sorted(set(range(m)) - set(residues))
        raise CipherError(f"difference system leaves positions {missing} unconstrained")
    residuals = [
        (i, j, (d - (residues[i] - residues[j])) % modulus)
        for (i, j), d in differences.items()
        if (residues[i] - residues[j]) % modulus != d % modulus
    ]
    return tuple(residues[i] for i in range(m)), residuals


def friedman_recover_key(
    cipher: str, m: int, alphabet: Alphabet = DEFAULT_ALPHABET
) -> KeyRecovery:
    """Recover Vigenere key candidates of length ``m``.

    For each list pair the shift maximizing the mutual index gives one
    difference k_i - k_j; the star rooted at the first list anchors a key
    for every choice of k_0, and the resulting keys are ranked by the
    chi-squared fit of their decryptions against English frequencies.
    """
    lists = decimate(cipher, m)
    if any(len(part) < 2 for part in lists):
        raise CipherError(f"splitting into {m} lists leaves a list shorter than 2")
    n = alphabet.size
    counts = [letter_counts(part, alphabet) for part in lists]

    def best_shift(i: int, j: int) -> int:
        fi, fj = counts[i], counts[j]
        best, best_num = 0, -1
        for s in range(n):
            num = sum(fi[h] * fj[(h - s) % n] for h in range(n))
            if num > best_num:
                best, best_num = s, num
        return best

    differences = {
        (i, j): best_shift(i, j) for i in range(m) for j in range(i + 1, m)
    }
    if m > 1:
        base, residuals = solve_shift_differences(m, differences, 0, n)
    else:
        base, residuals = (0,), []
    candidates = []
    for k0 in range(n):
        # the difference system is translation invariant, so every anchor
        # choice shifts the base solution uniformly
        key = VigenereKey(tuple((r + k0) % n for r in base))
        plain = vigenere_decrypt(cipher, key, alphabet)
        candidates.append(KeyCandidate(key.to_text(alphabet), chi_squared(plain, alphabet)))
    candidates.sort(key=lambda c: c.chi2)
    return KeyRecovery(
        m=m,
        differences=tuple((i, j, d) for (i, j), d in sorted(differences.items())),
        residuals=tuple(residuals),
        candidates=tuple(candidates),
    )
