"""Pinned calibration constants.

The asymptotic statements this laboratory checks all carry effective but
non-numeric constants.  Each constant below was fixed by one calibration
run and is asserted forever after ("calibrate once, assert forever").
Records emitted by the CLI carry CONSTANTS_VERSION so a change here
invalidates downstream fixtures.
"""

CONSTANTS_VERSION = "detlab-constants-v1"

# |mertens_sum(K, Q) - log Q| <= MERTENS_DEV on the test grids.
MERTENS_DEV = 1.6

# tail_three_halves(K, Q, cutoff) <= TAIL_C * Q^(-1/2).
TAIL_C = 2.5

# divisor_log_sum: sum <= max(log log N(x), 0) + DIVISOR_C.
DIVISOR_C = 1.0

# Cor. 2.6 shape: H_K(1:x) <= SMALL_SOLUTION_C * (n^(dK/2) H_K(A))^(r/(n-r)).
SMALL_SOLUTION_C = 4.0

# Thm. 2.4 shape: prod H(b_i) <= BV_PRODUCT_C^(n-m) * H_Ar(A).
BV_PRODUCT_C = 2.0

# Line counts: |{a + t w} ∩ [B]^n| <= LINE_C * B / H_K(w) + 1.
LINE_C = 2.0

# Union of degree-1 curves on a surface: <= LINE_UNION_C * d^6 * B + |I|.
LINE_UNION_C = 4.0

# Lemma 3.15 shape: b(f) <= BF_C * max(d^[-2,4/3,-8/3,2] * log H_aff(f), 1).
BF_C = 4.0

# pi_x: sum of log N(p) over primes where the point goes singular is
# <= PIX_KAPPA * log B + PIX_KAPPA0 on the test curve grids.
PIX_KAPPA = 3.0
PIX_KAPPA0 = 3.0

# Staircase sums: A(s) >= (r!/mu)^(1/r) * r/(r+1) * s^(1+1/r) - STAIRCASE_C*s.
STAIRCASE_C = 2.0

# Auxiliary-polynomial degree bounds (Thm 5.2 / Thm 5.13 shapes).
AUX_PROJ_C = 2.0
AUX_AFF_C = 2.0

# Enumeration guard: hard cap on loop iterations.
DEFAULT_BUDGET = 100_000_000

# extension_factor degree cap.
MAX_ABS_IRRED_DEGREE = 8

# Groebner caps.
GB_MAX_VARS = 4
GB_MAX_DEGREE = 6
