"""Independent brute-force recomputation used as a test oracle.

Everything here is a deliberate straight-line transcription, kept separate
from the package implementation: the membership functions branch exactly
like their printed piecewise definitions, aggregation is a bare
accumulation loop over learners, and classification repeats the rule list
verbatim. Do not import prereqminer here.
"""


def oracle_mu_cpr(delta, s1, s2):
    if delta < s1:
        return 0.0
    if s1 <= delta <= 0:
        return (-1.0 / s1) * delta + 1.0
    if 0 < delta <= s2:
        return (-1.0 / s2) * delta + 1.0
    return 0.0


def oracle_mu_rpr(delta, s2, s3):
    if delta < 0:
        return 0.0
    if 0 <= delta <= s2:
        return (1.0 / s2) * delta
    if s2 < delta <= s3:
        return (s3 - delta) / (s3 - s2)
    return 0.0


def oracle_strengths(source_grades, target_grades, s1, s2, s3):
    """(cpr, rpr, support) for one link from its two grade columns.

    Learners with either grade missing (None) contribute nothing.
    """
    cpr_total = 0.0
    rpr_total = 0.0
    count = 0
    for src, tgt in zip(source_grades, target_grades):
        if src is None or tgt is None:
            continue
        delta = tgt - src
        cpr_total += oracle_mu_cpr(delta, s1, s2)
        rpr_total += oracle_mu_rpr(delta, s2, s3)
        count += 1
    if count == 0:
        return 0.0, 0.0, 0
    return cpr_total / count, rpr_total / count, count


def oracle_classify(cpr, rpr, support, alpha):
    if support == 0:
        return "insufficient_data"
    if cpr >= alpha and cpr >= rpr:
        return "kept"
    if rpr >= alpha and rpr > cpr:
        return "reversed"
    return "dropped"
