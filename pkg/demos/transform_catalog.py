"""Print the transform of a few thick deltas and powers in R^3, then invert them."""

from thickfourier import ThickDistribution, ft_star, ft_upper_star, pf_power, thick_delta
from thickfourier.fourier import two_pi_power
from thickfourier.sphere import AngularFunction

n = 3
x1 = AngularFunction.coordinate(n, 0)
samples = [
    thick_delta(0, n=n),
    thick_delta(1, n=n),
    thick_delta(-3, n=n),
    thick_delta(-1, x1),
    pf_power(-2, n=n),
    pf_power("-1/2", x1),
]

for atom in samples:
    d = ThickDistribution(n, [atom])
    res = ft_star(d)
    back = ft_upper_star(res.output).output
    ok = back == d.reflect().scale(two_pi_power(n))
    rules = ", ".join(p["rule"] for p in res.provenance)
    print(f"{atom!r:45}  ->  {res.output!r}")
    print(f"{'':45}     rules: {rules}; inverts: {ok}")
