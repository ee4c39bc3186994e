//! Special functions backing the P-value computations: the complementary
//! error function, log-gamma, and the regularized upper incomplete gamma.

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// erfc
// ---------------------------------------------------------------------------
//
// Rational-approximation erfc after the FreeBSD msun implementation
// (Sun Microsystems, 1993), the same scheme used by Go's math package.
// Accuracy is about 1 ulp over the whole range, far tighter than the
// 1e-12 the P-value formulas need.

const ERX: f64 = 8.45062911510467529297e-01;

// |x| < 0.84375: erf(x) = x + x*R(x^2), R = P/Q
const PP0: f64 = 1.28379167095512558561e-01;
const PP1: f64 = -3.25042107247001499370e-01;
const PP2: f64 = -2.84817495755985104766e-02;
const PP3: f64 = -5.77027029648944159157e-03;
const PP4: f64 = -2.37630166566501626084e-05;
const QQ1: f64 = 3.97917223959155352819e-01;
const QQ2: f64 = 6.50222499887672944485e-02;
const QQ3: f64 = 5.08130628187576562776e-03;
const QQ4: f64 = 1.32494738004321644526e-04;
const QQ5: f64 = -3.96022827877536812320e-06;

// 0.84375 <= |x| < 1.25: erf(x) = erx + P1(s)/Q1(s), s = |x| - 1
const PA0: f64 = -2.36211856075265944077e-03;
const PA1: f64 = 4.14856118683748331666e-01;
const PA2: f64 = -3.72207876035701323847e-01;
const PA3: f64 = 3.18346619901161753674e-01;
const PA4: f64 = -1.10894694282396677476e-01;
const PA5: f64 = 3.54783043256182359371e-02;
const PA6: f64 = -2.16637559486879084300e-03;
const QA1: f64 = 1.06420880400844228286e-01;
const QA2: f64 = 5.40397917702171048937e-01;
const QA3: f64 = 7.18286544141962662868e-02;
const QA4: f64 = 1.26171219808761642112e-01;
const QA5: f64 = 1.36370839120290507362e-02;
const QA6: f64 = 1.19844998467991074170e-02;

// 1.25 <= |x| < 1/0.35: erfc(x) = exp(-x^2 - 0.5625 + R1/S1)/x
const RA0: f64 = -9.86494403484714822705e-03;
const RA1: f64 = -6.93858572707181764372e-01;
const RA2: f64 = -1.05586262253232909814e+01;
const RA3: f64 = -6.23753324503260060396e+01;
const RA4: f64 = -1.62396669462573470355e+02;
const RA5: f64 = -1.84605092906711035994e+02;
const RA6: f64 = -8.12874355063065934246e+01;
const RA7: f64 = -9.81432934416914548592e+00;
const SA1: f64 = 1.96512716674392571292e+01;
const SA2: f64 = 1.37657754143519042600e+02;
const SA3: f64 = 4.34565877475229228821e+02;
const SA4: f64 = 6.45387271733267880336e+02;
const SA5: f64 = 4.29008140027567833386e+02;
const SA6: f64 = 1.08635005541779435134e+02;
const SA7: f64 = 6.57024977031928170135e+00;
const SA8: f64 = -6.04244152148580987438e-02;

// 1/0.35 <= |x| < 28: erfc(x) = exp(-x^2 - 0.5625 + R2/S2)/x
const RB0: f64 = -9.86494292470009928597e-03;
const RB1: f64 = -7.99283237680523006574e-01;
const RB2: f64 = -1.77579549177547519889e+01;
const RB3: f64 = -1.60636384855821916062e+02;
const RB4: f64 = -6.37566443368389627722e+02;
const RB5: f64 = -1.02509513161107724954e+03;
const RB6: f64 = -4.83519191608651397019e+02;
const SB1: f64 = 3.03380607434824582924e+01;
const SB2: f64 = 3.25792512996573918826e+02;
const SB3: f64 = 1.53672958608443695994e+03;
const SB4: f64 = 3.19985821950859553908e+03;
const SB5: f64 = 2.55305040643316442583e+03;
const SB6: f64 = 4.74528541206955367215e+02;
const SB7: f64 = -2.24409524465858183362e+01;

/// Complementary error function erfc(x) = 1 - erf(x).
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_infinite() {
        return if x > 0.0 { 0.0 } else { 2.0 };
    }

    let sign = x < 0.0;
    let ax = x.abs();

    if ax < 0.84375 {
        if ax < 1.387_778_780_781_445_7e-17 {
            return 1.0 - x;
        }
        let z = x * x;
        let r = PP0 + z * (PP1 + z * (PP2 + z * (PP3 + z * PP4)));
        let s = 1.0 + z * (QQ1 + z * (QQ2 + z * (QQ3 + z * (QQ4 + z * QQ5))));
        let y = r / s;
        if x < 0.25 {
            // includes all negative x in this band
            return 1.0 - (x + x * y);
        }
        let r = x * y + (x - 0.5);
        return 0.5 - r;
    }

    if ax < 1.25 {
        let s = ax - 1.0;
        let p = PA0 + s * (PA1 + s * (PA2 + s * (PA3 + s * (PA4 + s * (PA5 + s * PA6)))));
        let q = 1.0 + s * (QA1 + s * (QA2 + s * (QA3 + s * (QA4 + s * (QA5 + s * QA6)))));
        return if sign {
            1.0 + ERX + p / q
        } else {
            1.0 - ERX - p / q
        };
    }

    if ax < 28.0 {
        if sign && ax >= 6.0 {
            return 2.0; // 2 - erfc(|x|) rounds to 2
        }
        let s = 1.0 / (ax * ax);
        let (r, q) = if ax < 1.0 / 0.35 {
            (
                RA0 + s * (RA1 + s * (RA2 + s * (RA3 + s * (RA4 + s * (RA5 + s * (RA6 + s * RA7)))))),
                1.0 + s
                    * (SA1
                        + s * (SA2
                            + s * (SA3
                                + s * (SA4 + s * (SA5 + s * (SA6 + s * (SA7 + s * SA8))))))),
            )
        } else {
            (
                RB0 + s * (RB1 + s * (RB2 + s * (RB3 + s * (RB4 + s * (RB5 + s * RB6))))),
                1.0 + s
                    * (SB1 + s * (SB2 + s * (SB3 + s * (SB4 + s * (SB5 + s * (SB6 + s * SB7)))))),
            )
        };
        // split |x| so -z*z is exact, then correct with (z-ax)(z+ax)
        let z = f64::from_bits(ax.to_bits() & 0xFFFF_FFFF_0000_0000);
        let v = (-z * z - 0.5625).exp() * ((z - ax) * (z + ax) + r / q).exp();
        return if sign { 2.0 - v / ax } else { v / ax };
    }

    if sign {
        2.0
    } else {
        0.0
    }
}

/// Standard normal CDF via erfc.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

// ---------------------------------------------------------------------------
// log-gamma
// ---------------------------------------------------------------------------

/// ln(Gamma(x)) for x > 0.
///
/// Stirling's series for x >= 12, shifted up by the recurrence
/// Gamma(x+1) = x Gamma(x) below that. Absolute error stays under ~1e-13.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    let mut shift = 0.0f64;
    let mut z = x;
    while z < 12.0 {
        shift += z.ln();
        z += 1.0;
    }
    // ln Gamma(z) = (z - 1/2) ln z - z + ln(2 pi)/2 + correction(z)
    let w = 1.0 / (z * z);
    let correction = (1.0 / 12.0
        + w * (-1.0 / 360.0
            + w * (1.0 / 1260.0 + w * (-1.0 / 1680.0 + w * (1.0 / 1188.0 - w * 691.0 / 360360.0)))))
        / z;
    const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;
    Ok((z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + correction - shift)
}

// ---------------------------------------------------------------------------
// regularized upper incomplete gamma
// ---------------------------------------------------------------------------

const IGAMC_MAX_ITER: usize = 100_000;

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
///
/// Series expansion of the lower function for x < a + 1, Lentz's continued
/// fraction for the upper function otherwise; both share the prefactor
/// exp(a ln x - x - ln Gamma(a)).
pub fn igamc(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || a.is_nan() {
        return Err(Error::Domain(format!("igamc requires a > 0, got {a}")));
    }
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!("igamc requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }

    let log_prefactor = a * x.ln() - x - ln_gamma(a)?;
    let prefactor = log_prefactor.exp();

    if x < a + 1.0 {
        // P(a, x) by series: sum_{k>=0} x^k / (a (a+1) ... (a+k))
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut denom = a;
        for _ in 0..IGAMC_MAX_ITER {
            denom += 1.0;
            term *= x / denom;
            sum += term;
            if term.abs() < sum.abs() * f64::EPSILON {
                return Ok((1.0 - prefactor * sum).clamp(0.0, 1.0));
            }
        }
        Err(Error::Domain(format!(
            "igamc series failed to converge for a={a}, x={x}"
        )))
    } else {
        // Q(a, x) by modified Lentz continued fraction:
        // Q = prefactor / (x + 1 - a + K_n [ n(a - n) / (x + 2n + 1 - a) ])
        const TINY: f64 = 1e-300;
        let b0 = x + 1.0 - a;
        let seed = if b0.abs() < TINY { TINY } else { b0 };
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / seed;
        let mut h = d;
        for n in 1..=IGAMC_MAX_ITER {
            let an = n as f64 * (a - n as f64);
            let bn = x + (2 * n + 1) as f64 - a;
            d = bn + an * d;
            if d.abs() < TINY {
                d = TINY;
            }
            c = bn + an / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let delta = c * d;
            h *= delta;
            if (delta - 1.0).abs() < f64::EPSILON {
                return Ok((prefactor * h).clamp(0.0, 1.0));
            }
        }
        Err(Error::Domain(format!(
            "igamc continued fraction failed to converge for a={a}, x={x}"
        )))
    }
}
