import numpy as np

from onemap.text import Alphabet, IntText

# worked example: x = aabaaabbbb, m = 3
WORKED_TEXT = "aabaaabbbb"
WORKED_C0 = [1, 0, 0, 0, 1, 0, 1, 1]
WORKED_AT_MOST = [3, 2, 1, 4, 3, 5, 2, 2]
WORKED_C1 = [2, 2, 1, 4, 2, 5, 1, 1]


def make_text(ranks, sigma):
    return IntText(np.asarray(ranks, dtype=np.int32), Alphabet.integer(sigma))


def random_ranks(rng, n, sigma):
    return rng.integers(0, sigma, n, dtype=np.int32)
