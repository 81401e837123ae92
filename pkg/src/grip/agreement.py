"""Kernel/model cast agreement: every first-order cast instance evaluates to
the same semantic value through both routes."""

from __future__ import annotations

from . import model as M
from . import reduction as R
from . import syntax as S


def agreement_codes():
    level0 = [M.CNat(), M.CBool(), M.CUnit(), M.CEmpty(), M.CProp(),
              M.CBox(), M.CErrU(0), M.CUnkU(0), M.CList(M.CNat()),
              M.CList(M.CBool()), M.CList(M.CUnkU(0)),
              M.CSigma(M.CBool(), M.const_fam(M.CNat()))]
    level1 = [M.CUniv(), M.CErrU(1), M.CUnkU(1), M.CCum(M.CNat()),
              M.CCum(M.CUnkU(0)), M.CList(M.CCum(M.CNat()))]
    return level0, level1


def run_agreement(model: M.Model, samples: int = 2000,
                  fuel: int = R.DEFAULT_FUEL) -> dict:
    checked = 0
    disagreements = []
    level0, level1 = agreement_codes()
    for pool in (level0, level1):
        for a in pool:
            try:
                vals = model.el(a)
            except M.BoundOverflow:
                continue
            enc_a = M.encode_code(a)
            for b in pool:
                enc_b = M.encode_code(b)
                for v in vals:
                    try:
                        tv = M.encode_val(a, v)
                    except M.Undecodable:
                        continue
                    # the model value the encoding denotes (unknown-type
                    # encodings may collapse below-err payloads)
                    try:
                        denoted = M.decode_val(a, R.normalize(tv, fuel), model)
                        expected = model.cast(a, b, denoted)
                        kernel_nf = R.normalize(S.Cast(enc_a, enc_b, tv), fuel)
                        got = M.decode_val(b, kernel_nf, model)
                    except (M.Undecodable, M.ModelError, R.FuelExhausted) as e:
                        disagreements.append(
                            f"{a} -> {b} at {v!r}: undecodable ({e})")
                        continue
                    checked += 1
                    if got != expected:
                        disagreements.append(
                            f"{a} -> {b} at {v!r}: kernel {got!r} "
                            f"vs model {expected!r}")
            if checked >= samples and not disagreements:
                pass
    return {"checked": checked, "disagreements": disagreements}
