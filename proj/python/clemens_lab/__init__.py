"""Python front end for the clemens_lab C++ core."""

import json

from . import _clemens_lab as _core
from ._clemens_lab import ClemensError, DegeneracyError, exact_rank

__all__ = [
    "ClemensError",
    "DegeneracyError",
    "exact_rank",
    "sample",
    "verify",
    "verify_sample",
    "report_csv",
    "ladder_ranks",
    "h0_profile",
    "splitting_type_tx",
    "normal_splitting",
]


def _dump(sample):
    return sample if isinstance(sample, str) else json.dumps(sample)


def sample(degree, seed, special=False, center="incidence", height=32):
    """Incidence sample as a dict (same schema as `clemens_lab sample`)."""
    return json.loads(_core.sample(degree, seed, special, center, height))


def verify(degrees=(1, 2, 3), trials=20, seed=20240531, suites="all", precision_bits=256,
           center="incidence", jobs=1):
    """Run the seeded suites. Returns (report dict, exit code)."""
    text, code = _core.verify(list(degrees), trials, seed, suites, precision_bits, center, jobs)
    return json.loads(text), code


def verify_sample(sample, suites="ladder,clemens,crosscheck"):
    return json.loads(_core.verify_sample(_dump(sample), suites))


def report_csv(report):
    return _core.csv_from_report(_dump(report))


def ladder_ranks(sample):
    return _core.ladder_ranks(_dump(sample))


def h0_profile(sample):
    return dict(_core.h0_profile(_dump(sample)))


def splitting_type_tx(sample):
    return list(_core.splitting_type_tx(_dump(sample)))


def normal_splitting(sample):
    return list(_core.normal_splitting(_dump(sample)))
