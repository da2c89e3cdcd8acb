"""Physical constants (SI units throughout)."""

MU_EARTH = 3.986004418e14        # gravitational parameter [m^3/s^2]
R_EARTH = 6378137.0              # equatorial radius [m]
OMEGA_EARTH = 7.2921159e-5       # rotation rate [rad/s]

# Zonal harmonic coefficients J2..J6 (EGM-class values, unnormalized).
J_ZONAL = {
    2: 1.08262668e-3,
    3: -2.53265649e-6,
    4: -1.61962159e-6,
    5: -2.27296083e-7,
    6: 5.40681239e-7,
}
