"""Frozen ground-truth tables for the verification commands and tests.

Every value here was transcribed once by hand and is deliberately kept
in display form (polynomial strings, explicit rational expressions,
fixed-precision decimals), so the verifiers compare computed results
against data that never passes through the engines being checked.

Polynomial strings use the canonical descending form of
:func:`dhurwitz.polys.poly_str` in the weight variable ``t``.  Each
coefficient-table entry is the weighted value: the enumeration
coefficient multiplied by the product of its parts.  Root-table rows
hold twelve-decimal string approximations of scaled root locations,
truncated, with the exact entries ``-1`` and ``0`` included verbatim.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Tuple

from .mnrat import MNRational
from .polys import Poly, RatFn

__all__ = [
    "DESSIN_WEIGHTED",
    "LARGEG_ROOT_TABLE",
    "MONOTONE_WEIGHTED",
    "weingarten_sw_reference",
    "weingarten_uw_reference",
]

# -- weighted coefficient tables, by genus then parts -----------------------

MONOTONE_WEIGHTED: Dict[int, Dict[Tuple[int, ...], str]] = {
    0: {
        (1,): "1",
        (2,): "t",
        (3,): "t^2+t",
        (4,): "t^3+3t^2+t",
        (5,): "t^4+6t^3+6t^2+t",
        (6,): "t^5+10t^4+20t^3+10t^2+t",
        (1, 1): "t",
        (2, 1): "2t^2+2t",
        (3, 1): "3t^3+9t^2+3t",
        (2, 2): "4t^3+10t^2+4t",
        (4, 1): "4t^4+24t^3+24t^2+4t",
        (3, 2): "6t^4+30t^3+30t^2+6t",
        (5, 1): "5t^5+50t^4+100t^3+50t^2+5t",
        (4, 2): "8t^5+68t^4+128t^3+68t^2+8t",
        (3, 3): "9t^5+72t^4+138t^3+72t^2+9t",
        (1, 1, 1): "4t^2+4t",
        (2, 1, 1): "10t^3+28t^2+10t",
        (3, 1, 1): "18t^4+102t^3+102t^2+18t",
        (2, 2, 1): "24t^4+120t^3+120t^2+24t",
        (4, 1, 1): "28t^5+268t^4+528t^3+268t^2+28t",
        (3, 2, 1): "42t^5+348t^4+660t^3+348t^2+42t",
        (2, 2, 2): "56t^5+424t^4+768t^3+424t^2+56t",
    },
    1: {
        (1,): "0",
        (2,): "t",
        (3,): "5t^2+5t",
        (4,): "15t^3+40t^2+15t",
        (5,): "35t^4+175t^3+175t^2+35t",
        (6,): "70t^5+560t^4+1050t^3+560t^2+70t",
        (1, 1): "t",
        (2, 1): "10t^2+10t",
        (3, 1): "45t^3+120t^2+45t",
        (2, 2): "50t^3+128t^2+50t",
        (4, 1): "140t^4+700t^3+700t^2+140t",
        (3, 2): "168t^4+792t^3+792t^2+168t",
        (5, 1): "350t^5+2800t^4+5250t^3+2800t^2+350t",
        (4, 2): "448t^5+3348t^4+6128t^3+3348t^2+448t",
        (3, 3): "462t^5+3432t^4+6312t^3+3432t^2+462t",
        (1, 1, 1): "20t^2+20t",
        (2, 1, 1): "140t^3+368t^2+140t",
        (3, 1, 1): "588t^4+2892t^3+2892t^2+588t",
        (2, 2, 1): "672t^4+3168t^3+3168t^2+672t",
        (4, 1, 1): "1848t^5+14548t^4+27128t^3+14548t^2+1848t",
        (3, 2, 1): "2268t^5+16908t^4+31008t^3+16908t^2+2268t",
        (2, 2, 2): "2688t^5+19128t^4+34416t^3+19128t^2+2688t",
    },
    2: {
        (1,): "0",
        (2,): "t",
        (3,): "21t^2+21t",
        (4,): "161t^3+413t^2+161t",
        (5,): "777t^4+3612t^3+3612t^2+777t",
        (1, 1): "t",
        (2, 1): "42t^2+42t",
        (3, 1): "483t^3+1239t^2+483t",
        (2, 2): "504t^3+1278t^2+504t",
        (4, 1): "3108t^4+14448t^3+14448t^2+3108t",
        (3, 2): "3402t^4+15450t^3+15450t^2+3402t",
        (1, 1, 1): "84t^2+84t",
        (2, 1, 1): "1470t^3+3756t^2+1470t",
        (3, 1, 1): "12726t^4+58794t^3+58794t^2+12726t",
        (2, 2, 1): "13608t^4+61800t^3+61800t^2+13608t",
    },
    3: {
        (1,): "0",
        (2,): "t",
        (3,): "85t^2+85t",
        (4,): "1555t^3+3930t^2+1555t",
        (5,): "14575t^4+65505t^3+65505t^2+14575t",
        (1, 1): "t",
        (2, 1): "170t^2+170t",
        (3, 1): "4665t^3+11790t^2+4665t",
        (2, 2): "4750t^3+11956t^2+4750t",
        (4, 1): "58300t^4+262020t^3+262020t^2+58300t",
        (3, 2): "61116t^4+271764t^3+271764t^2+61116t",
        (1, 1, 1): "340t^2+340t",
        (2, 1, 1): "14080t^3+35536t^2+14080t",
        (3, 1, 1): "236016t^4+1057824t^3+1057824t^2+236016t",
        (2, 2, 1): "244464t^4+1087056t^3+1087056t^2+244464t",
    },
}

DESSIN_WEIGHTED: Dict[int, Dict[Tuple[int, ...], str]] = {
    0: {
        (1,): "t",
        (2,): "t^2+t",
        (3,): "t^3+3t^2+t",
        (4,): "t^4+6t^3+6t^2+t",
        (5,): "t^5+10t^4+20t^3+10t^2+t",
        (6,): "t^6+15t^5+50t^4+50t^3+15t^2+t",
        (1, 1): "t",
        (2, 1): "2t^2+2t",
        (3, 1): "3t^3+9t^2+3t",
        (2, 2): "4t^3+10t^2+4t",
        (4, 1): "4t^4+24t^3+24t^2+4t",
        (3, 2): "6t^4+30t^3+30t^2+6t",
        (5, 1): "5t^5+50t^4+100t^3+50t^2+5t",
        (4, 2): "8t^5+68t^4+128t^3+68t^2+8t",
        (3, 3): "9t^5+72t^4+138t^3+72t^2+9t",
        (1, 1, 1): "2t",
        (2, 1, 1): "6t^2+6t",
        (3, 1, 1): "12t^3+36t^2+12t",
        (2, 2, 1): "16t^3+40t^2+16t",
        (4, 1, 1): "20t^4+120t^3+120t^2+20t",
        (3, 2, 1): "30t^4+150t^3+150t^2+30t",
        (2, 2, 2): "40t^4+176t^3+176t^2+40t",
    },
    1: {
        (1,): "0",
        (2,): "0",
        (3,): "t",
        (4,): "5t^2+5t",
        (5,): "15t^3+40t^2+15t",
        (6,): "35t^4+175t^3+175t^2+35t",
        (1, 1): "0",
        (2, 1): "0",
        (3, 1): "3t",
        (2, 2): "2t",
        (4, 1): "20t^2+20t",
        (3, 2): "18t^2+18t",
        (5, 1): "75t^3+200t^2+75t",
        (4, 2): "80t^3+200t^2+80t",
        (3, 3): "75t^3+198t^2+75t",
        (1, 1, 1): "0",
        (2, 1, 1): "0",
        (3, 1, 1): "12t",
        (2, 2, 1): "8t",
        (4, 1, 1): "100t^2+100t",
        (3, 2, 1): "90t^2+90t",
        (2, 2, 2): "80t^2+80t",
    },
}


# -- Weingarten values by cycle type ----------------------------------------


@lru_cache(maxsize=None)
def weingarten_uw_reference() -> Dict[Tuple[int, ...], RatFn]:
    """Leading-order Weingarten values as rational functions of N."""
    n = RatFn.variable()
    one = RatFn(Poly((1,)))
    d1, d4, d9 = n * n - 1, n * n - 4, n * n - 9
    return {
        (): one,
        (1,): 1 / n,
        (1, 1): 1 / d1,
        (2,): -1 / (n * d1),
        (1, 1, 1): (n * n - 2) / (n * d1 * d4),
        (2, 1): -1 / (d1 * d4),
        (3,): 2 / (n * d1 * d4),
        (1, 1, 1, 1): (n**4 - 8 * n * n + 6) / (n * n * d1 * d4 * d9),
        (2, 1, 1): -1 / (n * d1 * d9),
        (2, 2): (n * n + 6) / (n * n * d1 * d4 * d9),
        (3, 1): (2 * n * n - 3) / (n * n * d1 * d4 * d9),
        (4,): -5 / (n * d1 * d4 * d9),
    }


@lru_cache(maxsize=None)
def weingarten_sw_reference() -> Dict[Tuple[int, ...], MNRational]:
    """Full two-parameter Weingarten values as rational functions of M, N."""
    m = MNRational.var_m()
    n = MNRational.var_n()
    one = MNRational.from_scalar(1)
    d1, d4, d9 = n * n - 1, n * n - 4, n * n - 9
    return {
        (): one,
        (1,): m / n,
        (1, 1): m * (m * n - 1) / (n * d1),
        (2,): -(m * (m - n)) / (n * d1),
        (1, 1, 1): m * (m * m * n * n - 2 * m * m - 3 * m * n + 4) / (n * d1 * d4),
        (2, 1): -(m * (m - n) * (m * n - 2)) / (n * d1 * d4),
        (3,): m * (m - n) * (2 * m - n) / (n * d1 * d4),
        (1, 1, 1, 1): m
        * (
            m * m * m * n**4
            - 8 * m * m * m * n * n
            + 6 * m * m * m
            - 6 * m * m * n * n * n
            + 24 * m * m * n
            + 19 * m * n * n
            - 6 * m
            - 30 * n
        )
        / (n * n * d1 * d4 * d9),
        (2, 1, 1): -(m * (m - n) * (m * m * n * n - 4 * m * m - 5 * m * n + 10))
        / (n * d1 * d4 * d9),
        (2, 2): m
        * (m - n)
        * (m * m * n * n + 6 * m * m - m * n * n * n - 6 * m * n + 4 * n * n - 6)
        / (n * n * d1 * d4 * d9),
        (3, 1): m
        * (m - n)
        * (2 * m * m * n * n - 3 * m * m - m * n * n * n - 6 * m * n + 3 * n * n + 3)
        / (n * n * d1 * d4 * d9),
        (4,): -(m * (m - n) * (5 * m * m - 5 * m * n + n * n + 1)) / (n * d1 * d4 * d9),
    }


# -- large-genus scaled root locations --------------------------------------
#
# Rows are indexed by genus; the six entries are the scaled roots of the
# three-part weighted polynomial for parts (4, 2, 1) in increasing part
# order, twelve decimals, with the two exact entries kept exact.

LARGEG_ROOT_TABLE: Dict[int, Tuple[str, ...]] = {
    10: ("-5.041604716958", "-2.010612015758", "-1", "-0.4973609986225", "-0.1983495446670", "0"),
    11: ("-5.028663679645", "-2.007345500817", "-1", "-0.4981703446630", "-0.1988599882007", "0"),
    12: ("-5.019792253540", "-2.005088769701", "-1", "-0.4987310363066", "-0.1992114313684", "0"),
    13: ("-5.013688662391", "-2.003527619463", "-1", "-0.4991196479078", "-0.1994539484474", "0"),
    14: ("-5.009478345470", "-2.002446572250", "-1", "-0.4993891042376", "-0.1996215835335", "0"),
    15: ("-5.006568518035", "-2.001697414872", "-1", "-0.4995760061286", "-0.1997376039891", "0"),
    16: ("-5.004554730409", "-2.001177961094", "-1", "-0.4997056830732", "-0.1998179765971", "0"),
    17: ("-5.003159687696", "-2.000817629297", "-1", "-0.4997956762061", "-0.1998736923107", "0"),
    18: ("-5.002192595245", "-2.000567599393", "-1", "-0.4998581404112", "-0.1999123346331", "0"),
    19: ("-5.001521834116", "-2.000394067634", "-1", "-0.4999015024988", "-0.1999391451575", "0"),
    20: ("-5.001056436287", "-2.000273609283", "-1", "-0.4999316070356", "-0.1999577514750", "0"),
}
