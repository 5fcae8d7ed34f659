# Calibration workflow: known standards in, unknown samples out.
#
# An instrument is calibrated with standards whose true values are themselves
# measured (weighed, pipetted), so the x column is not exact either. Fitting
# with an interior gamma acknowledges error on both axes. Reading an unknown
# sample then runs the line backwards: measure a response, invert for the
# amount that produced it.

import numpy as np

from dualfit import Dataset, FitConfig, fit, inverse_predict

rng = np.random.default_rng(2024)

# ten standards: nominal amounts with preparation error, plus detector noise
true_amount = np.linspace(1.0, 10.0, 10)
prepared = true_amount + rng.normal(0.0, 0.10, 10)       # what's in the vial
response = 3.0 + 2.5 * prepared + rng.normal(0.0, 0.25, 10)  # what we read

standards = Dataset(prepared, response)

# weight chosen near the ratio of the two noise variances
line = fit(standards, FitConfig(gamma=0.85))
print(f"calibration: response = {line.beta0:.4f} + {line.beta1:.4f} * amount")
print(f"residual sum {line.sse:.4f}")
print()

# three unknown samples, measured once each
unknown_responses = [7.9, 14.2, 23.6]
print("response -> estimated amount")
for r in unknown_responses:
    print(f"  {r:6.2f}  ->  {inverse_predict(line, r):8.4f}")

# how much does the gamma choice move the answers? not much, when the
# calibration range is wide and the noise is small
print()
print("sensitivity of the x estimate to gamma, response = 14.2:")
for gamma in (1.0, 0.85, 0.5, 0.15):
    alt = fit(standards, FitConfig(gamma=gamma))
    print(f"  gamma={gamma:4.2f}  amount={inverse_predict(alt, 14.2):.4f}")
