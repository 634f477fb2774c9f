"""Closed forms for the unswept (v = 0) drive configurations.

Two commensurate-drive cases admit exact solutions through a change of
time variable:

* equal frequencies, zero phase lag: a Rabi rotation driven through
  sin(omega t);
* doubled transverse frequency at quarter-period lag: a sinusoidally swept
  crossing whose amplitudes are finite-time Cayley-Klein parameters.

Both are checked against direct integration here.
"""

import math

from lzdrive import DriveConfig, inverse_lz_case, propagate_tdse, rabi_case

# case 1: freq_mw = freq_rf, phase 0
cfg = DriveConfig(v=0.0, amp_rf=1.0, freq_rf=1.0, amp_mw=1.0, freq_mw=1.0)
t_end = 4.0 * math.pi
tr = propagate_tdse(cfg, tau_start=0.0, tau_end=t_end, tol=1e-12,
                    sample_stride=t_end / 80.0)
pops = tr.populations()
worst = max(
    abs(rabi_case(cfg, float(t))[1] - pops[k, 1]) for k, t in enumerate(tr.taus)
)
print(f"rotation case: worst |closed form - numeric| = {worst:.2e} over two periods")

# case 2: freq_mw = 2 freq_rf, phase pi/2
cfg = DriveConfig(v=0.0, amp_rf=0.5, freq_rf=1.0, amp_mw=1.0, freq_mw=2.0,
                  phase=math.pi / 2)
t_end = 2.0 * math.pi
tr = propagate_tdse(cfg, tau_start=0.0, tau_end=t_end, tol=1e-12,
                    sample_stride=t_end / 32.0)
pops = tr.populations()
print("\n  t       closed-form P_dn   numeric P_dn")
worst = 0.0
for k in range(1, tr.taus.size, 4):
    t = float(tr.taus[k])
    p_up, p_dn = inverse_lz_case(cfg, t)
    worst = max(worst, abs(p_dn - pops[k, 1]))
    print(f"  {t:5.2f}   {p_dn:16.8f}   {pops[k, 1]:12.8f}")
print(f"swept case: worst deviation {worst:.2e}")

# the transfer retraces itself over a full drive period: the effective
# sweep coordinate sin(omega t) returns to zero, undoing the passage
full = inverse_lz_case(cfg, t_end)
print(f"after one full period the transfer closes: P_dn = {full[1]:.2e}")
