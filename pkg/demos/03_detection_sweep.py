#!/usr/bin/env python3
"""Detection probability vs SNR, observation time, and false-alarm target.

A reduced version of the bundled fig7/fig8/fig9 data products (those default
to 1000 trials per cell; this demo runs 150 so it finishes in about a
minute). Every trial draws fresh data, fresh channel taps, fresh noise, and a
random timing offset uniform over the first slot.
"""

import numpy as np

from cyclodet import Standard, SweepConfig, run_detection_sweep

TRIALS = 150
SNRS = (-15.0, -10.0, -5.0, 0.0, 5.0)


def table(standard: Standard) -> None:
    cfg = SweepConfig(
        standard=standard,
        snr_db_list=SNRS,
        observation_times_s=(0.010, 0.050),
        p_f_list=(1e-2,),
        n_trials=TRIALS,
        master_seed=7,
    )
    result = run_detection_sweep(cfg)
    print(f"\nP(label = {standard.value} | {standard.value}), P_F = 1e-2, "
          f"{TRIALS} trials per cell")
    print("   SNR(dB)   Pd@10ms   Pd@50ms")
    for snr in SNRS:
        p10 = result.cell(snr, 0.010, 1e-2).pd
        p50 = result.cell(snr, 0.050, 1e-2).pd
        print(f"   {snr:+7.1f}   {p10:7.3f}   {p50:7.3f}")


def pf_comparison() -> None:
    print("\nLTE at 10 ms: higher allowed false-alarm rate buys sensitivity")
    print("   SNR(dB)   Pd@P_F=0.1   Pd@P_F=0.01   Pd@P_F=0.001")
    cfg = SweepConfig(
        standard=Standard.LTE,
        snr_db_list=(-15.0, -10.0, -5.0),
        observation_times_s=(0.010,),
        p_f_list=(1e-1, 1e-2, 1e-3),
        n_trials=TRIALS,
        master_seed=8,
    )
    result = run_detection_sweep(cfg)
    for snr in (-15.0, -10.0, -5.0):
        row = [result.cell(snr, 0.010, pf).pd for pf in (1e-1, 1e-2, 1e-3)]
        print(f"   {snr:+7.1f}   {row[0]:10.3f}   {row[1]:11.3f}   {row[2]:12.3f}")


if __name__ == "__main__":
    table(Standard.GSM)
    table(Standard.LTE)
    pf_comparison()
