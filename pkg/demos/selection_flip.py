"""A perturbation that flips which fixed point is selected.

An unperturbed two-state chain splits its mass evenly between the fixed
points 0^inf and 1^inf.  Adding a depth-one correction of size e^{beta eta}
at 11, with gamma < eta < 0, makes the equilibrium measures collapse onto
1^inf exponentially fast: mu_beta([0]) ~ 2 e^{2 beta (gamma - eta)}.  Closed
forms are cross-checked against the numeric spectral solver at every beta.
"""

from zerotemp import appendix_example


if __name__ == "__main__":
    gamma_p, eta = -2.0, -1.0
    print(f"gamma = {gamma_p}, eta = {eta}")
    print("beta    mu_pert([0])    mu_unpert([0])   closed-form rel err")
    beta = 2.0
    while beta <= 64.0:
        ex = appendix_example(gamma_p, eta, beta)
        print(f"{beta:5.0f}   {ex.p0:.6e}    {ex.mu0_unpert:.6f}         {ex.max_rel_err:.2e}")
        beta *= 2.0
