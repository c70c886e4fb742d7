"""Reference ROUGE values for tests/data/rouge_pairs.tsv.

Independent of the C++ code: exact rational arithmetic with fractions,
LCS by plain recursion with memoization. Rerun to regenerate the table:

    python3 tests/oracles/rouge_oracle.py > tests/data/rouge_pairs.tsv
"""
from collections import Counter
from fractions import Fraction
from functools import lru_cache
import re

PAIRS = [
    ("caffeine is good", "caffeine improves physical performance"),
    ("a b c d", "a c d"),
    ("the cat sat on the mat", "the cat sat on the mat"),
    ("the cat sat on the mat", "the mat sat on the cat"),
    ("the the the", "the cat"),
    ("nuclear power is safe", "solar power is cheap"),
    ("Feminism muddies the debate", "feminism clouds public debate"),
    ("x y z", "a b c"),
    ("one", "one two three four"),
    ("a b a b a", "b a b"),
    ("taxes should rise", "Taxes should rise!"),
    ("school uniforms reduce bullying", "uniforms in school reduce bullying and costs"),
    ("a a b b c c", "a b c"),
    ("we should ban cars in city centres", "city centres should ban cars"),
    ("it's not fair", "it is not fair"),
    ("12% higher performance", "performance 12 percent higher"),
    ("a b c d e f g", "g f e d c b a"),
    ("remote work is better", "working remotely is better for most people"),
    ("zoos should close", "zoos should close zoos should close"),
    ("free body fat acids as fuel", "fat acids fuel the body"),
]


def tokens(s):
    return re.findall(r"[a-z0-9]+", s.lower())


def ngrams(t, n):
    return Counter(tuple(t[i:i + n]) for i in range(len(t) - n + 1))


def prf(overlap, c, r):
    p = Fraction(overlap, c) if c else Fraction(0)
    rec = Fraction(overlap, r) if r else Fraction(0)
    f = 2 * p * rec / (p + rec) if p + rec else Fraction(0)
    return p, rec, f


def rouge_n(c, r, n):
    cc, rc = ngrams(c, n), ngrams(r, n)
    overlap = sum(min(v, rc[g]) for g, v in cc.items())
    return prf(overlap, max(len(c) - n + 1, 0), max(len(r) - n + 1, 0))


def lcs(a, b):
    @lru_cache(maxsize=None)
    def go(i, j):
        if i == len(a) or j == len(b):
            return 0
        if a[i] == b[j]:
            return 1 + go(i + 1, j + 1)
        return max(go(i + 1, j), go(i, j + 1))
    return go(0, 0)


def main():
    print("# candidate\treference\tr1_p\tr1_r\tr1_f\tr2_f\trl_f")
    for cand, ref in PAIRS:
        c, r = tokens(cand), tokens(ref)
        p1, r1, f1 = rouge_n(c, r, 1)
        f2 = rouge_n(c, r, 2)[2]
        fl = prf(lcs(tuple(c), tuple(r)), len(c), len(r))[2]
        vals = "\t".join(f"{float(x):.12f}" for x in (p1, r1, f1, f2, fl))
        print(f"{cand}\t{ref}\t{vals}")


if __name__ == "__main__":
    main()
