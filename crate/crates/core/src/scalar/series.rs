use super::constants::binom_general;
use super::rational::{rat, Rational};

/// Taylor coefficients of (1 − x)^{m/2} up to and including x^order.
pub fn one_minus_x_half_pow(m: i64, order: usize) -> Vec<Rational> {
    let a = rat(m, 2);
    (0..=order)
        .map(|j| {
            let c = binom_general(&a, j as u32);
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rint;
    use num_traits::{One, Zero};

    fn mul_trunc(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().min(b.len());
        (0..n).map(|k| (0..=k).map(|i| &a[i] * &b[k - i]).sum()).collect()
    }

    #[test]
    fn half_powers_invert() {
        for m in -7..=7 {
            let p = one_minus_x_half_pow(m, 9);
            let q = one_minus_x_half_pow(-m, 9);
            let prod = mul_trunc(&p, &q);
            assert!(prod[0].is_one());
            assert!(prod[1..].iter().all(|c| c.is_zero()), "m = {m}");
        }
    }

    #[test]
    fn sqrt_squares() {
        let p = one_minus_x_half_pow(1, 6);
        let sq = mul_trunc(&p, &p);
        assert_eq!(sq[0], rint(1));
        assert_eq!(sq[1], rint(-1));
        assert!(sq[2..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn integer_powers_are_polynomials() {
        let p = one_minus_x_half_pow(6, 6);
        assert_eq!(&p[..4], &[rint(1), rint(-3), rint(3), rint(-1)]);
        assert!(p[4..].iter().all(|c| c.is_zero()));
    }
}
