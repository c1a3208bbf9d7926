//! Published reference values at the eight CM points: the domain
//! representatives, their period matrices, the fourth powers of the five
//! theta constants `theta_{v_1..v_5}`, and the genus 1 `j` and `lambda`
//! tables behind them. All algebraic values are stored as radical
//! expressions and evaluated exactly through [`Radical`].

use num_bigint::BigInt;
use rug::Float;

use crate::bigc::{float_parse, BigComplex};
use crate::radical::{Radical, RadicalError};

/// Domain representatives `p~_1..p~_8` in coordinates `(e1, e2, e3)`.
pub const P_TILDE: [[i64; 3]; 8] =
    [[2, 0, 1], [4, -4, 3], [2, 4, 3], [0, 0, 1], [2, -2, 3], [5, 1, 3], [1, 1, 1], [5, -5, 3]];

/// The unimodular change `P` relating the printed and computed period
/// matrices of some CM points: printed = `P tau P^t`.
pub const P_REDUCE: [[i64; 2]; 2] = [[1, 1], [0, 1]];

/// One CM point with its published data.
#[derive(Clone, Copy, Debug)]
pub struct CmCase {
    /// Index `1..=8`.
    pub index: usize,
    /// Domain representative.
    pub p_tilde: [i64; 3],
    /// Printed period matrix entries `(tau11, tau12, tau22)`.
    pub tau: [&'static str; 3],
    /// True if the printed matrix is `P tau P^t` of the image of `p~`.
    pub printed_reduced: bool,
    /// The ratio vector `(theta_{v_1}^4 : ... : theta_{v_5}^4)`.
    pub quintuple: [&'static str; 5],
    /// Generators flipped by the Galois conjugate used in the monomial
    /// nullspace check, if any.
    pub conjugate_flips: Option<&'static [i64]>,
    /// Elliptic point `xi_nu` sharing the same fiber parameter, if any.
    pub elliptic_partner: Option<usize>,
    /// A published entry that disagrees with the theta series, as
    /// `(position, corrected expression)`.
    pub erratum: Option<(usize, &'static str)>,
}

/// The eight CM cases.
pub const CASES: [CmCase; 8] = [
    CmCase {
        index: 1,
        p_tilde: P_TILDE[0],
        tau: ["(3*sqrt(-3)+5)/2", "-(sqrt(-3)+1)/2", "(sqrt(-3)-1)/2"],
        printed_reduced: false,
        quintuple: [
            "1",
            "4*sqrt(-3)-6*i-2*sqrt(3)+4",
            "8-4*sqrt(3)",
            "sqrt(-3)/2+1/2",
            "-4*sqrt(-3)+6*i-2*sqrt(3)+4",
        ],
        conjugate_flips: None,
        elliptic_partner: Some(5),
        erratum: None,
    },
    CmCase {
        index: 2,
        p_tilde: P_TILDE[1],
        tau: ["(sqrt(-7)+1)/2", "0", "(sqrt(-7)-3)/2"],
        printed_reduced: false,
        quintuple: [
            "1",
            "31/32-3*sqrt(-7)/32",
            "31/32-3*sqrt(-7)/32",
            "449/512-93*sqrt(-7)/512",
            "3*sqrt(-7)/32+1/32",
        ],
        conjugate_flips: None,
        elliptic_partner: None,
        erratum: None,
    },
    CmCase {
        index: 3,
        p_tilde: P_TILDE[2],
        tau: ["(3*sqrt(-7)-3)/2", "-(sqrt(-7)-3)/2", "(sqrt(-7)-1)/2"],
        printed_reduced: false,
        quintuple: [
            "32",
            "384*sqrt(-7)-1008*i-1488*sqrt(7)+3968",
            "4096-1536*sqrt(7)",
            "3*sqrt(-7)+31",
            "-384*sqrt(-7)+1008*i-48*sqrt(7)+128",
        ],
        conjugate_flips: None,
        elliptic_partner: None,
        erratum: None,
    },
    CmCase {
        index: 4,
        p_tilde: P_TILDE[3],
        tau: ["(sqrt(-15)-1)/2", "1", "(sqrt(-15)-1)/2"],
        printed_reduced: false,
        quintuple: [
            "1024",
            "-112*sqrt(-15)+272*sqrt(-3)+336*sqrt(5)+272",
            "-112*sqrt(-15)+272*sqrt(-3)+336*sqrt(5)+272",
            "-223*sqrt(-3)+119*sqrt(-15)+357*sqrt(5)+223",
            "112*sqrt(-15)-272*sqrt(-3)-336*sqrt(5)+752",
        ],
        conjugate_flips: Some(&[5]),
        elliptic_partner: Some(2),
        // The printed fifth entry is X1 - X2, which drops the shift of the
        // lower characteristic by the integral off-diagonal entry. The
        // series gives 1024 lambda (1 - lambda) with lambda = X2 / 1024.
        erratum: Some((
            4,
            "(-112*sqrt(-15)+272*sqrt(-3)+336*sqrt(5)+272)*(752+112*sqrt(-15)-272*sqrt(-3)-336*sqrt(5))/1024",
        )),
    },
    CmCase {
        index: 5,
        p_tilde: P_TILDE[4],
        tau: ["sqrt(-13)/2", "1/2", "(sqrt(-13)-2)/2"],
        printed_reduced: false,
        quintuple: ["1", "614-170*sqrt(13)", "686-190*sqrt(13)", "1", "36-10*sqrt(13)"],
        conjugate_flips: None,
        elliptic_partner: None,
        erratum: None,
    },
    CmCase {
        index: 6,
        p_tilde: P_TILDE[5],
        tau: ["(sqrt(-22)+2)/2", "-1/2", "(sqrt(-22)-2)/4"],
        printed_reduced: true,
        quintuple: [
            "1176*sqrt(-11)-2758*sqrt(-2)-4074*sqrt(22)+19109",
            "1182*sqrt(-11)-2772*sqrt(-2)-4116*sqrt(22)+19306",
            "-1182*sqrt(-11)+2772*sqrt(-2)-4116*sqrt(22)+19306",
            "-1176*sqrt(-11)+2758*sqrt(-2)-4074*sqrt(22)+19109",
            "14*sqrt(-2)-6*sqrt(-11)",
        ],
        conjugate_flips: None,
        elliptic_partner: None,
        erratum: None,
    },
    CmCase {
        index: 7,
        p_tilde: P_TILDE[6],
        tau: ["(sqrt(-30)+2)/2", "1/2", "(sqrt(-30)-2)/4"],
        printed_reduced: true,
        quintuple: [
            "-3966*sqrt(-10)-5608*sqrt(-5)+5120*sqrt(-6)+7240*sqrt(-3)-21038*sqrt(30)-29752*sqrt(15)+81480*sqrt(2)+115229",
            "-3972*sqrt(-10)-5616*sqrt(-5)+5128*sqrt(-6)+7250*sqrt(-3)-21100*sqrt(30)-29840*sqrt(15)+81720*sqrt(2)+115570",
            "3972*sqrt(-10)+5616*sqrt(-5)-5128*sqrt(-6)-7250*sqrt(-3)-21100*sqrt(30)-29840*sqrt(15)+81720*sqrt(2)+115570",
            "3966*sqrt(-10)+5608*sqrt(-5)-5120*sqrt(-6)-7240*sqrt(-3)-21038*sqrt(30)-29752*sqrt(15)+81480*sqrt(2)+115229",
            "6*sqrt(-10)+8*sqrt(-5)-8*sqrt(-6)-10*sqrt(-3)",
        ],
        conjugate_flips: Some(&[2]),
        elliptic_partner: Some(4),
        erratum: None,
    },
    CmCase {
        index: 8,
        p_tilde: P_TILDE[7],
        tau: ["(sqrt(-10)+3)/4", "-1/4", "(sqrt(-10)-7)/4"],
        printed_reduced: false,
        quintuple: [
            "-16*sqrt(-5)+36*i-12*sqrt(5)+27",
            "94-42*sqrt(5)",
            "14-6*sqrt(5)",
            "16*sqrt(-5)-36*i-12*sqrt(5)+27",
            "-16*sqrt(-5)+36*i+8*sqrt(10)+18*sqrt(5)-18*sqrt(2)-40",
        ],
        conjugate_flips: None,
        elliptic_partner: Some(1),
        erratum: None,
    },
];

/// The case with index `k` (`1..=8`).
pub fn case(k: usize) -> Option<&'static CmCase> {
    CASES.get(k.wrapping_sub(1))
}

impl CmCase {
    /// The printed period matrix entries as exact numbers.
    pub fn tau_exact(&self) -> Result<[Radical; 3], RadicalError> {
        Ok([Radical::parse(self.tau[0])?, Radical::parse(self.tau[1])?, Radical::parse(self.tau[2])?])
    }

    /// The published quintuple as exact numbers.
    pub fn quintuple_exact(&self) -> Result<[Radical; 5], RadicalError> {
        let v: Vec<Radical> = self.quintuple.iter().map(|s| Radical::parse(s)).collect::<Result<_, _>>()?;
        Ok(v.try_into().expect("five entries"))
    }

    /// The published quintuple evaluated at `prec` bits.
    pub fn quintuple_eval(&self, prec: u32) -> Result<[BigComplex; 5], RadicalError> {
        Ok(self.quintuple_exact()?.map(|r| r.eval(prec)))
    }

    /// The quintuple with the erratum applied, as exact numbers.
    pub fn corrected_exact(&self) -> Result<[Radical; 5], RadicalError> {
        let mut v = self.quintuple_exact()?;
        if let Some((k, e)) = self.erratum {
            v[k] = Radical::parse(e)?;
        }
        Ok(v)
    }

    /// The corrected quintuple evaluated at `prec` bits.
    pub fn corrected_eval(&self, prec: u32) -> Result<[BigComplex; 5], RadicalError> {
        Ok(self.corrected_exact()?.map(|r| r.eval(prec)))
    }
}

/// A class polynomial with the CM arguments of its roots.
#[derive(Clone, Copy, Debug)]
pub struct ClassPolynomial {
    /// The label `D` of the table row.
    pub d: u32,
    /// Integer coefficients, leading first.
    pub coeffs: &'static [&'static str],
    /// Arguments `tau` with `j(tau)` a root.
    pub roots: &'static [&'static str],
}

/// The class polynomial table.
pub const CLASS_POLYNOMIALS: [ClassPolynomial; 7] = [
    ClassPolynomial { d: 3, coeffs: &["1", "0"], roots: &["(-1+sqrt(-3))/2"] },
    ClassPolynomial { d: 7, coeffs: &["1", "3375"], roots: &["(1+sqrt(-7))/2"] },
    ClassPolynomial {
        d: 15,
        coeffs: &["1", "191025", "-121287375"],
        roots: &["(sqrt(-15)+1)/2", "(sqrt(-15)+1)/4"],
    },
    ClassPolynomial {
        d: 13,
        coeffs: &["1", "-6896880000", "-567663552000000"],
        roots: &["sqrt(-13)", "(sqrt(-13)+1)/2"],
    },
    ClassPolynomial {
        d: 22,
        coeffs: &["1", "-6294842640000", "15798135578688000000"],
        roots: &["sqrt(-22)", "sqrt(-22)/2"],
    },
    ClassPolynomial {
        d: 30,
        coeffs: &[
            "1",
            "-883067971104000",
            "26329406807264910336000",
            "-2588458316335175909376000000",
            "4934510722321469030006784000000",
        ],
        roots: &["sqrt(-30)", "sqrt(-30)/2", "sqrt(-30)/3", "sqrt(-30)/5"],
    },
    ClassPolynomial { d: 10, coeffs: &["1", "-425692800", "9103145472000"], roots: &["sqrt(-10)/2", "sqrt(-10)"] },
];

impl ClassPolynomial {
    /// Coefficients as integers.
    pub fn coefficients(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.parse().expect("integer literal")).collect()
    }

    /// Substitution residual `|P(x)| / max(1, sum |c_k| |x|^k)`.
    pub fn relative_residual(&self, x: &BigComplex) -> f64 {
        let prec = x.prec();
        let mut acc = BigComplex::zero(prec);
        let mut scale = Float::new(prec);
        let ax = x.abs();
        let mut pw = Float::with_val(prec, 1);
        let coeffs: Vec<Float> =
            self.coeffs.iter().map(|c| float_parse(c, prec).expect("integer literal")).collect();
        for c in &coeffs {
            acc = &(&acc * x) + &BigComplex::from_real(c);
        }
        for c in coeffs.iter().rev() {
            scale += Float::with_val(prec, c.abs_ref()) * &pw;
            pw *= &ax;
        }
        if scale < 1 {
            scale = Float::with_val(prec, 1);
        }
        (acc.abs() / scale).to_f64()
    }
}

/// Published `j(tau)` values.
pub const J_VALUES: [(&str, &str); 13] = [
    ("(sqrt(-3)-1)/2", "0"),
    ("(sqrt(-7)+1)/2", "-3375"),
    ("(sqrt(-7)-3)/2", "-3375"),
    ("(sqrt(-7)-1)/2", "-3375"),
    ("(sqrt(-15)-1)/2", "(-85995*sqrt(5)-191025)/2"),
    ("sqrt(-13)", "956448000*sqrt(13)+3448440000"),
    ("sqrt(-13)-2", "956448000*sqrt(13)+3448440000"),
    ("sqrt(-22)+2", "3147421320000+2225561184000*sqrt(2)"),
    ("(sqrt(-22)-2)/2", "3147421320000-2225561184000*sqrt(2)"),
    (
        "sqrt(-30)+2",
        "98729993940480*sqrt(5)+156105837619200*sqrt(2)+69812648236800*sqrt(10)+220766992776000",
    ),
    (
        "(sqrt(-30)-2)/2",
        "-98729993940480*sqrt(5)+156105837619200*sqrt(2)-69812648236800*sqrt(10)+220766992776000",
    ),
    ("sqrt(-10)+3", "95178240*sqrt(5)+212846400"),
    ("sqrt(-10)-7", "95178240*sqrt(5)+212846400"),
];

/// A published `lambda(tau)` value. `Nested` stands for
/// `offset + coeff * sqrt(inner)` with `inner` itself a radical number.
#[derive(Clone, Copy, Debug)]
pub enum LambdaValue {
    Radical(&'static str),
    Nested { offset: &'static str, coeff: &'static str, inner: &'static str },
}

impl LambdaValue {
    /// Numerical value at `prec` bits (principal square roots).
    pub fn eval(&self, prec: u32) -> Result<BigComplex, RadicalError> {
        match self {
            LambdaValue::Radical(s) => Ok(Radical::parse(s)?.eval(prec)),
            LambdaValue::Nested { offset, coeff, inner } => {
                let root = Radical::parse(inner)?.eval(prec).sqrt();
                let c = Radical::parse(coeff)?.eval(prec);
                Ok(&Radical::parse(offset)?.eval(prec) + &(&c * &root))
            }
        }
    }
}

/// Published `lambda(tau)` values, `lambda = theta_{0,1/2}^4 / theta_{0,0}^4`.
pub const LAMBDA_VALUES: [(&str, LambdaValue); 14] = [
    ("(sqrt(-3)-1)/2", LambdaValue::Radical("(sqrt(-3)+1)/2")),
    ("sqrt(-3)+1", LambdaValue::Radical("8-4*sqrt(3)")),
    ("(sqrt(-7)+1)/2", LambdaValue::Radical("(-3*sqrt(-7)+31)/32")),
    ("(sqrt(-7)-3)/2", LambdaValue::Radical("(-3*sqrt(-7)+31)/32")),
    ("(sqrt(-7)-1)/2", LambdaValue::Radical("(3*sqrt(-7)+31)/32")),
    ("sqrt(-7)+1", LambdaValue::Radical("-48*sqrt(7)+128")),
    ("(sqrt(-15)-1)/2", LambdaValue::Radical("17/64+21*sqrt(5)/64+17*sqrt(-3)/64-7*sqrt(-15)/64")),
    ("sqrt(-13)", LambdaValue::Nested { offset: "1/2", coeff: "3", inner: "-18+5*sqrt(13)" }),
    ("sqrt(-22)+2", LambdaValue::Radical("2*(sqrt(2)+1)^6*(10-3*sqrt(11))*(3*sqrt(11)-7*sqrt(2))")),
    ("(sqrt(-22)-2)/2", LambdaValue::Radical("(3*sqrt(11)+10)^2*(3*sqrt(11)-7*sqrt(2))^2")),
    (
        "sqrt(-30)+2",
        LambdaValue::Radical(
            "2*(-sqrt(5)+sqrt(6))*((1+sqrt(5))/2)^6*(sqrt(10)+3)^2*(4-sqrt(15))*(2-sqrt(3))*(5-2*sqrt(6))",
        ),
    ),
    (
        "(sqrt(-30)-2)/2",
        LambdaValue::Radical("(2+sqrt(3))^2*(5+2*sqrt(6))^2*(4-sqrt(15))^2*(sqrt(5)-sqrt(6))^2"),
    ),
    ("sqrt(-10)+3", LambdaValue::Radical("(sqrt(10)+3)*(1/2-sqrt(5)/2)^6*(1+sqrt(2))^2/2")),
    ("sqrt(-10)-7", LambdaValue::Radical("(sqrt(10)+3)*(1/2-sqrt(5)/2)^6*(1+sqrt(2))^2/2")),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_expression_parses() {
        for c in &CASES {
            c.tau_exact().unwrap();
            c.quintuple_exact().unwrap();
        }
        for (t, j) in &J_VALUES {
            Radical::parse(t).unwrap();
            Radical::parse(j).unwrap();
        }
        for (t, l) in &LAMBDA_VALUES {
            Radical::parse(t).unwrap();
            l.eval(64).unwrap();
        }
        for p in &CLASS_POLYNOMIALS {
            assert_eq!(p.coefficients().len(), p.roots.len() + 1);
        }
    }

    #[test]
    fn case_lookup() {
        assert_eq!(case(4).unwrap().p_tilde, [0, 0, 1]);
        assert!(case(0).is_none());
        assert!(case(9).is_none());
    }

    #[test]
    fn class_polynomial_contains_published_j() {
        // The D = 15 polynomial vanishes at the published value of
        // j((sqrt(-15)-1)/2), which equals j((sqrt(-15)+1)/2).
        let j = Radical::parse(J_VALUES[4].1).unwrap().eval(200);
        assert!(CLASS_POLYNOMIALS[2].relative_residual(&j) < 1e-50);
        let j = Radical::parse(J_VALUES[7].1).unwrap().eval(200);
        assert!(CLASS_POLYNOMIALS[4].relative_residual(&j) < 1e-50);
    }
}
