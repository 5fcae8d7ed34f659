# Minimal tour: fit a line when both coordinates carry error.
#
# The weight gamma decides which direction of error matters. gamma=1 only
# penalizes vertical misses (classic least squares), gamma=0 only horizontal
# ones, and anything in between blends the two.

import numpy as np

from dualfit import Dataset, FitConfig, fit, inverse_predict, predict

# four points, deliberately tiny so every number is easy to eyeball
data = Dataset.from_points([(0, 0), (0, 0), (1, 0), (1, 1)])

for gamma in (1.0, 0.9, 0.5, 0.0):
    line = fit(data, FitConfig(gamma=gamma))
    print(
        f"gamma={gamma:4.2f}  slope={line.beta1:+.6f}  "
        f"intercept={line.beta0:+.6f}  sse={line.sse:.6f}"
    )

# the fitted line always passes through the centroid of the data,
# so predictions pivot around (x_bar, y_bar) as gamma changes
line = fit(data, FitConfig(gamma=0.9))
print()
print("at x=0.5 the line predicts y =", predict(line, 0.5))
print("y=0.25 is reached at      x =", inverse_predict(line, 0.25))

# candidate_roots holds every real root the slope equation produced;
# the selected one minimizes the weighted error sum
print()
print("slope candidates considered:", np.round(line.candidate_roots, 6))
