//! Resultants over integral domains, fraction-free.
//!
//! [`resultant`] runs the subresultant pseudo-remainder sequence;
//! [`sylvester_resultant`] takes the Bareiss determinant of the Sylvester
//! matrix. The two are independent routes to the same value and are
//! cross-checked in the tests.

use super::{BiPoly, ExactDiv, Poly, UniPoly};
use crate::error::{Error, Result};

/// Resultant of `a` and `b` by the subresultant PRS.
pub fn resultant<T: ExactDiv>(a: &Poly<T>, b: &Poly<T>) -> T {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return T::zero();
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        negate = da % 2 == 1 && db % 2 == 1;
    }
    let finish = |value: T, negate: bool| if negate { value.neg_ref() } else { value };

    let db = b.degree().unwrap();
    if db == 0 {
        let da = a.degree().unwrap() as u32;
        return finish(b.lc().unwrap().pow(da), negate);
    }

    let mut g = T::one();
    let mut h = T::one();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = a.pseudo_rem(&b).expect("b is nonzero");
        a = b;
        if r.is_zero() {
            return T::zero();
        }
        let divisor = g.mul_ref(&h.pow(delta));
        b = r
            .div_scalar_exact(&divisor)
            .expect("subresultant division is exact");
        g = a.lc().unwrap().clone();
        if delta > 0 {
            h = g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact");
        }
        if b.degree() == Some(0) {
            break;
        }
    }
    let da = a.degree().unwrap() as u32;
    let value = b
        .lc()
        .unwrap()
        .pow(da)
        .div_exact(&h.pow(da - 1))
        .expect("subresultant division is exact");
    finish(value, negate)
}

/// Resultant as the Bareiss determinant of the Sylvester matrix.
pub fn sylvester_resultant<T: ExactDiv>(a: &Poly<T>, b: &Poly<T>) -> T {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return T::zero();
    };
    let n = da + db;
    if n == 0 {
        return T::one();
    }
    let mut m = vec![vec![T::zero(); n]; n];
    for row in 0..db {
        for (k, c) in a.coeffs().iter().enumerate() {
            m[row][row + da - k] = c.clone();
        }
    }
    for row in 0..da {
        for (k, c) in b.coeffs().iter().enumerate() {
            m[db + row][row + db - k] = c.clone();
        }
    }
    bareiss_det(m)
}

fn bareiss_det<T: ExactDiv>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return T::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j]
                    .mul_ref(&m[k][k])
                    .sub_ref(&m[i][k].mul_ref(&m[k][j]));
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg_ref()
    } else {
        det
    }
}

/// Resultant of two polynomials in `v` with coefficients in Z[u]; the
/// result is a polynomial in `u`.
pub fn resultant_v(f: &BiPoly, g: &BiPoly) -> Result<UniPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(resultant(f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    fn zp(cs: &[i64]) -> UniPoly {
        UniPoly::from_i64s(cs)
    }

    #[test]
    fn integer_resultants() {
        // res(x - 2, x^2 - 2) = 2^2 - 2
        let a = zp(&[-2, 1]);
        let b = zp(&[-2, 0, 1]);
        assert_eq!(resultant(&a, &b), BigInt::from(2));
        assert_eq!(sylvester_resultant(&a, &b), BigInt::from(2));
        // common root 1
        assert_eq!(resultant(&zp(&[-1, 1]), &zp(&[-1, 0, 1])), BigInt::from(0));
        let c = zp(&[3, -1, 4, 1, -5]);
        let d = zp(&[2, 7, -1, 8]);
        assert_eq!(resultant(&c, &d), sylvester_resultant(&c, &d));
        assert_eq!(resultant(&d, &c), sylvester_resultant(&d, &c));
    }

    #[test]
    fn eliminates_v() {
        let u = UniPoly::x();
        // f = u - v, g = v^2 - 2
        let f = BiPoly::new(vec![u.clone(), zp(&[-1])]);
        let g = BiPoly::new(vec![zp(&[-2]), UniPoly::zero(), zp(&[1])]);
        let r = resultant_v(&f, &g).unwrap();
        assert_eq!(r.primitive_part(), zp(&[-2, 0, 1]));
        assert_eq!(r, sylvester_resultant(&f, &g));
        let v = BiPoly::new(vec![UniPoly::zero(), UniPoly::one()]);
        assert!(resultant_v(&v, &v).unwrap().is_zero());
        assert!(matches!(
            resultant_v(&BiPoly::zero(), &v),
            Err(Error::ZeroPolynomial)
        ));
    }
}
