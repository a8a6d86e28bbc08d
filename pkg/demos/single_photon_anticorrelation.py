"""Reanalysis of the single-photon beam-splitter anticorrelation runs.

Reproduces the published run table: accidental-level expected
coincidences, the quantum prediction alpha, its mode-count equivalent K,
and the resulting calculated coincidence counts, next to the measured
values.  Row 1 is anomalous in the original data (measured counts above
the accidental level) and is flagged rather than compared.
"""

from hbtcount import table1_report

header = (f"{'row':>3} {'Nw':>5} {'expected':>8} {'alpha':>7} {'K':>7} "
          f"{'calc(K)':>7} {'measured':>8} {'M_emp':>6}")
print(header)
print("-" * len(header))
for row in table1_report():
    flag = "  (anomalous)" if row["anomalous"] else ""
    print(f"{row['row']:>3} {row['Nw']:>5.2f} {row['expected']:>8} "
          f"{row['alpha_qm']:>7.4f} {row['k_mode']:>7.4f} "
          f"{row['calculated_k']:>7} {row['measured']:>8} "
          f"{row['M_emp']:>6.2f}{flag}")

print()
print("Every regular run measured fewer coincidences than the accidental")
print("expectation, and the classical-model predictions (columns alpha, K)")
print("overshoot the data by similar margins: the measured anticorrelation")
print("is stronger than any accidental-coincidence account allows.")
