//! Simultaneous polynomial root refinement (Aberth–Ehrlich), generic over the scalar.

use num_complex::Complex;

use crate::scalar::Real;

/// Outcome of a refinement run.
#[derive(Clone, Debug)]
pub struct Refined<T> {
    pub roots: Vec<Complex<T>>,
    pub iterations: usize,
    pub converged: bool,
}

pub(crate) fn cabs<T: Real>(z: &Complex<T>) -> T {
    z.norm_sqr().sqrt()
}

/// `p(z)` and `p'(z)` by Horner, for real coefficients `[a₀, a₁, …]`.
fn eval_with_derivative<T: Real>(coeffs: &[T], z: &Complex<T>) -> (Complex<T>, Complex<T>) {
    let mut p = Complex::new(T::zero(), T::zero());
    let mut dp = Complex::new(T::zero(), T::zero());
    for c in coeffs.iter().rev() {
        dp = dp * z.clone() + p.clone();
        p = p * z.clone() + Complex::new(c.clone(), T::zero());
    }
    (p, dp)
}

/// Starting points spread on a circle containing every root.
pub fn initial_guesses<T: Real>(coeffs: &[T], digits: u32) -> Vec<Complex<T>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].clone();
    let nn = T::from_i64_digits(n as i64, digits);
    let center = -(coeffs[n - 1].clone() / (lead.clone() * nn));
    // Fujiwara-style bound via f64; only the scale matters here.
    let lead_f = lead.to_f64().abs();
    let mut radius: f64 = 0.0;
    for k in 1..=n {
        let c = coeffs[n - k].to_f64().abs() / lead_f;
        radius = radius.max(c.powf(1.0 / k as f64));
    }
    let radius = T::from_f64_digits((2.0 * radius).max(1.0), digits);
    let two_pi = T::pi(digits) * T::from_f64_digits(2.0, digits);
    (0..n)
        .map(|k| {
            let angle = two_pi.clone() * T::from_f64_digits(k as f64 / n as f64, digits)
                + T::from_f64_digits(0.4, digits);
            Complex::new(
                center.clone() + radius.clone() * angle.cos(),
                radius.clone() * angle.sin(),
            )
        })
        .collect()
}

/// Refines all roots of the real polynomial `coeffs` at once, starting from
/// `guesses`. Stops when every correction is below `tol·max(1, |z|)`.
pub fn aberth<T: Real>(coeffs: &[T], mut roots: Vec<Complex<T>>, tol: &T, max_iter: usize) -> Refined<T> {
    let n = roots.len();
    let one = T::one();
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let mut worst = T::zero();
        for i in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, &roots[i]);
            if p.norm_sqr().is_zero() {
                continue;
            }
            let newton = p / dp;
            let mut repulsion = Complex::new(T::zero(), T::zero());
            for j in 0..n {
                if j != i {
                    let diff = roots[i].clone() - roots[j].clone();
                    repulsion = repulsion + Complex::new(one.clone(), T::zero()) / diff;
                }
            }
            let denom = Complex::new(one.clone(), T::zero()) - newton.clone() * repulsion;
            let step = newton / denom;
            let scale = cabs(&roots[i]).max_of(one.clone());
            let rel = cabs(&step) / scale;
            if !rel.is_finite() {
                return Refined {
                    roots,
                    iterations,
                    converged: false,
                };
            }
            worst = worst.max_of(rel);
            roots[i] = roots[i].clone() - step;
        }
        if worst <= *tol {
            return Refined {
                roots,
                iterations,
                converged: true,
            };
        }
    }
    Refined {
        roots,
        iterations,
        converged: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BigReal;

    #[test]
    fn f64_quartic() {
        // x⁴ − 8x³ + 6x² − 8x + 1
        let c = [1.0, -8.0, 6.0, -8.0, 1.0];
        let r = aberth(&c, initial_guesses(&c, 15), &1e-14, 200);
        assert!(r.converged);
        let mut moduli: Vec<f64> = r.roots.iter().map(|z| z.norm()).collect();
        moduli.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!((moduli[0] - 7.327_631_9).abs() < 1e-6);
        assert!((moduli[1] - 1.0).abs() < 1e-12);
        assert!((moduli[3] - 0.136_470_3).abs() < 1e-6);
    }

    #[test]
    fn big_real_refinement_from_f64_seeds() {
        let c = [1.0, -3.0, 1.0];
        let seeds = aberth(&c, initial_guesses(&c, 15), &1e-12, 100).roots;
        let hc: Vec<BigReal> = c.iter().map(|&x| BigReal::from_f64(x, 80)).collect();
        let hs = seeds
            .into_iter()
            .map(|z| Complex::new(BigReal::from_f64(z.re, 80), BigReal::from_f64(z.im, 80)))
            .collect();
        let tol = BigReal::ten_pow_neg(75, 80);
        let r = aberth(&hc, hs, &tol, 50);
        assert!(r.converged);
        let sqrt5 = BigReal::from_f64(5.0, 80).sqrt();
        let phi2 = (BigReal::from_f64(3.0, 80) + sqrt5) / BigReal::from_f64(2.0, 80);
        let best = r
            .roots
            .iter()
            .map(|z| cabs(&(z.clone() - Complex::new(phi2.clone(), BigReal::from_f64(0.0, 80)))))
            .fold(BigReal::from_f64(1.0, 80), |a, b| a.min_of(b));
        assert!(best < BigReal::ten_pow_neg(70, 80));
    }
}
