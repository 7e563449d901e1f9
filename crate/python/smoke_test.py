"""Smoke test for the wordstat Python module.

Run after building the extension, either installed with maturin or loaded
straight from the cargo target directory:

    cargo build -p wordstat-py --release --features extension-module
    python3 python/smoke_test.py
"""

import importlib.machinery
import importlib.util
import itertools
import os
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        import wordstat

        return wordstat
    except ImportError:
        pass
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libwordstat_py.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("wordstat", str(lib))
            spec = importlib.util.spec_from_loader("wordstat", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("wordstat extension not found; build it with cargo first")


ws = load()


def brute(k, n, pred):
    return sum(1 for w in itertools.product(range(1, k + 1), repeat=n) if pred(w))


def des_in(w, letters):
    return sum(1 for a, b in zip(w, w[1:]) if a > b and a in letters)


# word types
w = ws.Word([2, 1, 2, 1], 2)
p = ws.Partition.threshold(2, 1)
sv = w.stat_vector(p)
assert sv.blocks() == [(0, 1, 0, 2), (2, 0, 0, 2)], sv
assert sv.get(2, "des") == 2
assert w.complement().letters == [1, 2, 1, 2]
assert str(w) == "2121" and len(w) == 4

# closed forms against direct enumeration
assert ws.count("des-mod", 2, 1, s=2, alphabet=4, r=1) == 2
assert ws.count_des_mod(2, 4, 1, 2, 1) == 2
assert ws.count("levels-threshold", 3, 2, k=1, t=1) == 1
for k, t, n in [(3, 2, 4), (4, 1, 5)]:
    for s in range(n):
        expected = brute(k, n, lambda w: des_in(w, set(range(1, t + 1))) == s)
        assert ws.count_des_le(k, t, n, s) == expected
        assert ws.count("des-le", n, s, engine="oracle", k=k, t=t) == expected

# every engine gives the same table
tables = [ws.table("levels-blocks", 4, engine=e, sizes=[1, 2]) for e in ("closed-form", "oracle", "transfer", "series")]
assert all(t == tables[0] for t in tables), tables
assert sum(tables[0].values()) == 3**4

# big integers survive the boundary
assert ws.count_des_gt(9, 9, 30, 0) == 9**30

# joint distribution and series agree
part = ws.Partition.mod_residue(3, 2)
dist = ws.distribution(3, 3, part)
assert sum(dist.values()) == 27
assert dist == ws.distribution(3, 3, part, method="brute")
names, coeffs = ws.series(2, ws.Partition.threshold(2, 1), 2, track=["x2"])
assert names == ["x_2"] and coeffs[2] == {(0,): 3, (1,): 1}
names, coeffs = ws.series(2, ws.Partition.threshold(2, 0), 2, gf="B")
assert names == ["q"] and coeffs[2] == {(1,): 1, (2,): 1}

# rearrangements
rho, x, y = [1, 2, 1], {2, 3}, {1, 2}
rd = ws.rearrangement_distribution(rho, x, y)
assert all(ws.hall_remmel_count(rho, x, y, s) == c for s, c in rd.items())
assert ws.hall_remmel_even_words([1, 1], 2, 1) == 1

# identities and verification
rep = ws.check_identity_26_28(6, 3, 2)
assert rep["equal"] and rep["lhs"] == 9
assert ws.check_identity_32(4, 1, 1)["equal"]
assert ws.direct_count_top_letter(3, 3, 1) == ws.count_des_gt(3, 2, 3, 1)
assert ws.verify("formulas-vs-oracle", k_max=3, n_max=4)["failures"] == 0
assert ws.verify("identities", n_max=5, inject_fault=True)["failures"] > 0

# errors
for bad in (lambda: ws.count_des_le(2, 3, 2, 1), lambda: ws.Word([3], 2), lambda: ws.table("nope", 2)):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")
os.environ[ws.BUDGET_ENV] = "10"
try:
    ws.count("des-le", 5, 1, engine="oracle", k=3, t=2)
except ws.BudgetExceededError:
    pass
else:
    raise AssertionError("expected BudgetExceededError")
finally:
    del os.environ[ws.BUDGET_ENV]

print("python smoke test passed")
