"""What each cloning attack buys an eavesdropper on B92.

Run: python3 demos/eavesdropping.py
"""

import numpy as np

from qclone import attack_analysis, builtin_spec, info_curve, meridional_spec

print("B92 encodes bits in two nonorthogonal states |u>, |v> with overlap")
print("O = sin^2(vartheta). Eve clones each qubit, keeps one copy, forwards")
print("the other, and measures with Bob's own unambiguous-discrimination")
print("POVM. Two numbers grade the attack: her mutual information I (bits)")
print("and the discrepancy D Bob can detect on a parity check.\n")

machines = [
    ("meridional", meridional_spec()),
    ("equatorial", builtin_spec("equatorial")),
    ("universal", builtin_spec("universal")),
]

overlaps = np.linspace(0.05, 0.95, 10)
print(f"{'O':>5}", *(f"I_{name[:4]:<6} D_{name[:4]:<6}" for name, _ in machines))
for o in overlaps:
    cells = []
    for _, spec in machines:
        row = info_curve(spec, [o])[0]
        cells.append(f"{row[1]:<8.5f} {row[2]:<8.5f}")
    print(f"{o:>5.2f}", *cells)
print()

print("Three regularities worth noticing:")
print(" 1. The meridional attack dominates in information at every overlap;")
print("    the signal states live on the meridian it was optimized for.")
print(" 2. Its discrepancy stays in [0.05, 0.10], below the universal")
print("    machine's constant 1/6 and the equatorial machine's 0.1464.")
print(" 3. Everyone's information falls as the states grow more alike;")
print("    large O leaves little to distinguish, for Bob and Eve alike.\n")

vt = np.arcsin(np.sqrt(0.5))
print(f"Detail at O = 0.5 (vartheta = {vt:.4f}):")
for name, spec in machines:
    res = attack_analysis(spec, vt)
    print(f"  {name:>10}: I = {res.mutual_information:.6f} bits, D = {res.discrepancy:.6f}")
    for mu in ("G1", "G2", "G3"):
        p_u, p_v = res.outcome_probs[mu]
        print(f"      P({mu}|u) = {p_u:.4f}  P({mu}|v) = {p_v:.4f}")

print()
print("The ideal machine (a perfect wiretap) marks the ceiling: D = 0 and")
ideal = attack_analysis(builtin_spec("ideal"), vt)
print(f"I = {ideal.mutual_information:.6f}, exactly Bob's conclusive rate 1 - sin(vartheta).")
