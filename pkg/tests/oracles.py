"""Slow reference implementations used to check the fast paths.

Everything here trades efficiency for obviousness: exhaustive enumeration,
windowed matching, and textbook formulas written out longhand.
"""

from itertools import combinations
from math import fsum, sqrt


def brute_force_patterns(transactions, theta):
    """Every itemset with support strictly above theta, by enumeration."""
    items = sorted({c for t in transactions for c in t})
    out = {}
    for size in range(1, len(items) + 1):
        for combo in combinations(items, size):
            s = frozenset(combo)
            support = sum(1 for t in transactions if s <= t)
            if support > theta:
                out[s] = support
    return out


def direct_confidence(transactions, antecedent, consequent):
    s_a = sum(1 for t in transactions if antecedent in t)
    s_ab = sum(1 for t in transactions if antecedent in t and consequent in t)
    return s_ab / s_a if s_a else 0.0


def window_scan(phrases, tokens):
    """Greedy longest-match from each start position.

    phrases: list of (phrase string, concept id). Returns
    (concept_id, start, length) tuples; after a match the scan resumes at the
    first token past it, otherwise it advances one token.
    """
    split = [(p.split(), cid) for p, cid in phrases]
    out = []
    pos = 0
    n = len(tokens)
    while pos < n:
        best = None
        for words, cid in split:
            k = len(words)
            if pos + k <= n and list(tokens[pos:pos + k]) == words:
                if best is None or k > best[1]:
                    best = (cid, k)
        if best:
            out.append((best[0], pos, best[1]))
            pos += best[1]
        else:
            pos += 1
    return out


def pearson_reference(x, y):
    n = len(x)
    mx = fsum(x) / n
    my = fsum(y) / n
    num = fsum((a - mx) * (b - my) for a, b in zip(x, y))
    den = sqrt(fsum((a - mx) ** 2 for a in x)) * sqrt(fsum((b - my) ** 2 for b in y))
    return num / den
