"""Sampling the moduli of extension classes and tallying instanton strata."""

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field

from .algebra.laurent import LaurentZU
from .bundle import CanonicalBundle, embed_next, splits_on_neighborhood, window_monomials
from .direct_image import InstantonNumbers, charge_report, check_bounds, height, width


def _bundle(j, coeffs):
    return CanonicalBundle(j, LaurentZU(dict(zip(window_monomials(j), coeffs))))


def sample_polynomials(j, n, seed, coeff_range=3):
    """``n`` canonical classes with integer coefficients uniform in
    ``[-coeff_range, coeff_range]``, drawn in window order."""
    if j < 1 or n < 1:
        raise ValueError("need j >= 1 and n >= 1")
    rng = random.Random(seed)
    slots = window_monomials(j)
    out = []
    for _ in range(n):
        out.append(_bundle(j, [rng.randint(-coeff_range, coeff_range) for _ in slots]))
    return out


def exhaustive_polynomials(j, coeff_range):
    """Every canonical class with coefficients in ``[-coeff_range, coeff_range]``."""
    values = range(-coeff_range, coeff_range + 1)
    return [_bundle(j, c) for c in itertools.product(values, repeat=len(window_monomials(j)))]


@dataclass
class ProbeResult:
    name: str
    bundle: CanonicalBundle
    numbers: InstantonNumbers
    ok: bool
    note: str = ""


@dataclass
class CensusReport:
    j: int
    samples: int
    coeff_range: int
    seed: object
    histogram: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    probes: list = field(default_factory=list)
    max_charge_split_only: bool = True

    def majority(self):
        if not self.histogram:
            return None, 0.0
        key, count = max(self.histogram.items(), key=lambda kv: (kv[1], kv[0]))
        return key, count / self.samples

    def as_dict(self):
        key, frac = self.majority()
        return {
            "j": self.j,
            "samples": self.samples,
            "range": self.coeff_range,
            "seed": self.seed,
            "histogram": [
                {"width": w, "height": h, "count": c} for (w, h), c in sorted(self.histogram.items())
            ],
            "majority": list(key) if key else None,
            "majority_fraction": round(frac, 6),
            "violations": list(self.violations),
            "probes": [
                {"name": p.name, "p": str(p.bundle.p), "j": p.bundle.j, "width": p.numbers.width,
                 "height": p.numbers.height, "charge": p.numbers.charge, "ok": p.ok}
                for p in self.probes
            ],
        }


def _numbers(b, bounds):
    return charge_report(b.j, b.p, bounds)


def _tally(j, bundles, bounds):
    hist, violations = Counter(), []
    max_seen, max_split_only = -1, True
    for b in bundles:
        nums = InstantonNumbers(*_raw_numbers(b, bounds))
        for problem in check_bounds(j, nums):
            violations.append(f"{b.p}: {problem}")
        hist[(nums.width, nums.height)] += 1
        k = nums.charge
        if k > max_seen:
            max_seen, max_split_only = k, b.is_split()
        elif k == max_seen and not b.is_split():
            max_split_only = False
    return hist, violations, max_seen, max_split_only


def _raw_numbers(b, bounds):
    return width(b.j, b.p, bounds), height(b.j, b.p)


def _probes(j, rng_seed, coeff_range, bounds):
    probes = []
    split = CanonicalBundle(j, LaurentZU())
    nums = _numbers(split, bounds)
    probes.append(ProbeResult("split", split, nums, nums.charge == j * j))
    if j >= 2:
        src = sample_polynomials(j - 1, 1, f"embed-probe:{rng_seed}", coeff_range)[0]
        img = embed_next(src)
        nums = InstantonNumbers(*_raw_numbers(img, bounds))
        ok = not check_bounds(j, nums) and splits_on_neighborhood(img, 2)
        probes.append(ProbeResult("embed", img, nums, ok, f"image of {src.p} at j={j - 1}"))
    return probes


def census(j, n=None, seed=0, coeff_range=3, exhaustive=False, bounds=None):
    """Histogram of ``(w, h)`` over sampled (or all) classes of splitting type ``j``."""
    if exhaustive:
        bundles = exhaustive_polynomials(j, coeff_range)
    else:
        bundles = sample_polynomials(j, n, seed, coeff_range)
    hist, violations, max_seen, split_only = _tally(j, bundles, bounds)
    report = CensusReport(j, len(bundles), coeff_range, seed if not exhaustive else "exhaustive")
    report.histogram = dict(sorted(hist.items()))
    report.violations = violations
    report.probes = _probes(j, seed, coeff_range, bounds)
    split_charge = report.probes[0].numbers.charge
    # the maximal charge must be attained only by the split class
    report.max_charge_split_only = split_only or max_seen < split_charge
    for probe in report.probes:
        if not probe.ok:
            report.violations.append(f"probe {probe.name} failed for {probe.bundle.p}")
    return report


def verify_stratification_bounds(report):
    """Bounds hold, the split class has charge ``j^2``, and no other sampled
    class reaches that charge."""
    j = report.j
    for (w, h) in report.histogram:
        if check_bounds(j, InstantonNumbers(w, h)):
            return False
    if report.violations:
        return False
    split = [p for p in report.probes if p.name == "split"]
    if not split or split[0].numbers.charge != j * j:
        return False
    return report.max_charge_split_only
