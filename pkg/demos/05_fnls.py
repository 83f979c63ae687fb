# # Fractional nonlinear Schrodinger with fourth-order splitting
#
# i psi_t = 1/2 (-Delta)^s psi + gamma |psi|^2 psi, psi(0) = sech(x) e^{ix}.
# Each sub-step is exact, so the discrete mass is conserved to roundoff.

# %%
import numpy as np

from mcfrac.fnls import FnlsConfig, dt_refinement_study, run_simulation

cfg = FnlsConfig(s=0.7, gamma=-1.0, dt=0.01, T=1.0, N=128, nu=2.0, snapshot_times=(0.0, 0.5, 1.0))
res = run_simulation(cfg)
for t, v in res.snapshots:
    print(f"t={t:.2f}  max|psi| = {np.max(np.abs(v)):.4f}")
print(f"mass drift over {len(res.mass_trace) - 1} steps: {res.max_mass_drift:.1e}")

# %% Halving dt cuts the error by about 16.
for row in dt_refinement_study(cfg, [0.1, 0.05, 0.025, 0.0125]):
    print(f"dt={row['dt']:.4f}  error {row['error_max']:.2e}  order {row.get('order_max', float('nan')):.2f}")

# %% Defocusing (gamma > 0) with a smaller order spreads the wave faster.
res = run_simulation(FnlsConfig(s=0.3, gamma=1.0, dt=0.01, T=1.0, N=128, nu=2.0))
print("defocusing, s=0.3: final max|psi| = %.4f" % np.max(np.abs(res.state.values)))
