"""Reference systems with hand-worked general solutions, plus seeded corpora."""

import random

from dioph.model import GeneralSolution, LinearSystem

# 6x1 - 12x2 - 8x3 + 22x4 = 14, solved by gcd descent in three rounds.
WORKED_EQ = LinearSystem.equation([6, -12, -8, 22], 14)
WORKED_EQ_GS = GeneralSolution(WORKED_EQ.vars, [[2, -5, 4], [1, 0, 0], [0, -1, 3], [0, 1, 0]], [5, 0, 2, 0])

# 17x - 7y + 10z = -12, two congruence rounds.
CONGRUENCE_EQ = LinearSystem(["x", "y", "z"], [[17, -7, 10]], [-12])
CONGRUENCE_EQ_GS = GeneralSolution(CONGRUENCE_EQ.vars, [[3, -7], [-17, 43], [-17, 42]], [12, -72, -72])

# -13x1 + 3x2 - 4x3 = 0 and a lattice that satisfies it, passes every
# structural check, and still misses (1, 7, 2): it needs k = (1/2, 3/2).
HOM_EQ = LinearSystem.equation([-13, 3, -4], 0)
HOM_CANDIDATE = GeneralSolution(HOM_EQ.vars, [[-1, 1], [5, 3], [7, -1]], [0, 0, 0])
HOM_MISSED = (1, 7, 2)

SUBST_SYS = LinearSystem(list("xyzw"), [[5, -7, -2, 6], [-4, 6, -3, 11]], [6, 0])
SUBST_SYS_GS = GeneralSolution(SUBST_SYS.vars, [[3, 4], [1, 0], [31, 79], [9, 23]], [2, 0, 23, 7])

# Includes a zero row; the published answer for this one does not satisfy
# the first equation, so tests rely on self-verification only.
ELIM_SYS = LinearSystem(list("xyzw"), [[12, -7, 9, 0], [0, -5, 8, 10], [0, 0, 0, 0], [15, 0, 21, 69]], [12, 0, 0, 3])

FRACTION_SYS = LinearSystem(None, [[3, 4, 0, 22, -8], [6, 0, 0, 46, -12], [0, 4, 3, -1, 9]], [25, 2, 26])
FRACTION_SYS_GS = GeneralSolution(
    FRACTION_SYS.vars, [[-40, -92], [3, 3], [-11, 0], [6, 12], [3, 0]], [27, 4, 8, -4, -2]
)

# Published answer fails the second equation; self-verification only.
MODPIVOT_SYS = LinearSystem(None, [[3, 0, -7, 6, 0], [4, 3, 0, 6, -5]], [-2, 19])

HYBRID_SYS = LinearSystem(None, [[3, 0, 6, 2, 0], [0, 4, -2, 0, -7]], [0, -1])
HYBRID_SYS_GS = GeneralSolution(
    HYBRID_SYS.vars, [[-6, -4, -2], [-2, 1, 0], [3, 2, 0], [0, 0, 3], [-2, 0, 0]], [2, 1, -1, 0, 1]
)


def random_system(rng: random.Random, max_m=3, max_n=5, max_coeff=9, solvable=True) -> LinearSystem:
    m, n = rng.randint(1, max_m), rng.randint(1, max_n)
    A = [[rng.randint(-max_coeff, max_coeff) for _ in range(n)] for _ in range(m)]
    if m > 1 and rng.random() < 0.25:
        # a dependent row, kept within the coefficient bound
        f = rng.choice([-1, 1])
        A[-1] = [f * a for a in A[0]]
    if solvable:
        x = [rng.randint(-4, 4) for _ in range(n)]
        b = [sum(a * v for a, v in zip(row, x)) for row in A]
    else:
        b = [rng.randint(-15, 15) for _ in range(m)]
    return LinearSystem(None, A, b)


def random_equation(rng: random.Random, max_n=4, max_coeff=20) -> LinearSystem:
    n = rng.randint(1, max_n)
    a = [rng.randint(-max_coeff, max_coeff) for _ in range(n)]
    # a share of homogeneous equations exercises the standard-form invariants
    b = 0 if rng.random() < 0.2 else rng.randint(-3 * max_coeff, 3 * max_coeff)
    return LinearSystem.equation(a, b)


def system_corpus(seed=2024, count=200):
    rng = random.Random(seed)
    return [random_system(rng) for _ in range(count)]


def unsolvable_corpus(seed=99, count=100):
    rng = random.Random(seed)
    return [random_system(rng, solvable=False) for _ in range(count)]


def equation_corpus(seed=7, count=500):
    rng = random.Random(seed)
    return [random_equation(rng) for _ in range(count)]
