//! The Gaussian rational field Q(i), the scalar field of every complexified
//! object in this crate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(Rational::from_int(n), Rational::zero())
    }

    pub fn from_rational(r: Rational) -> Self {
        GaussianRational::new(r, Rational::zero())
    }

    /// `a/b + (c/d)·i` from integer parts. Panics on zero denominators.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational::new(Rational::new(re_num, re_den), Rational::new(im_num, im_den))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    /// `re² + im²`; zero iff the value is zero.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm_sq();
        let inv = n.recip()?;
        Some(GaussianRational::new(&self.re * &inv, -&self.im * &inv))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational::new(&self.re * r, &self.im * r)
    }

    /// Exact square root in Q(i), if one exists. The returned root is the one
    /// with re > 0, or re = 0 and im ≥ 0.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        if self.im.is_zero() {
            if !self.re.is_negative() {
                let r = self.re.sqrt()?;
                return Some(GaussianRational::from_rational(r));
            }
            let r = (-&self.re).sqrt()?;
            return Some(GaussianRational::new(Rational::zero(), r));
        }
        // (x + iy)² = re + i·im with y = im/(2x) needs x² = (re + |self|)/2.
        let modulus = self.norm_sq().sqrt()?;
        let half = Rational::new(1, 2);
        let x_sq = (&self.re + &modulus) * &half;
        let x = x_sq.sqrt()?;
        if x.is_zero() {
            return None;
        }
        let y = &self.im * &(&x * &Rational::from_int(2)).recip()?;
        let cand = GaussianRational::new(x, y);
        if &(&cand * &cand) == self {
            Some(cand)
        } else {
            None
        }
    }
}

macro_rules! forward_gr_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                std::ops::$trait::$method(&self, &rhs)
            }
        }

        impl std::ops::$trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                std::ops::$trait::$method(&self, rhs)
            }
        }

        impl std::ops::$trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

impl std::ops::Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl std::ops::Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl std::ops::Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl std::ops::Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    // division by multiplication with the reciprocal
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.recip().expect("division by zero in Q(i)");
        self * &inv
    }
}

forward_gr_binop!(Add, add);
forward_gr_binop!(Sub, sub);
forward_gr_binop!(Mul, mul);
forward_gr_binop!(Div, div);

impl std::ops::Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl std::ops::Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl std::ops::AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl std::ops::SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::from_rational(r)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_part = |f: &mut fmt::Formatter<'_>, im: &Rational, lead_sign: bool| {
            if im.is_one() {
                write!(f, "{}i", if lead_sign { "+" } else { "" })
            } else if *im == Rational::from_int(-1) {
                write!(f, "-i")
            } else if lead_sign && !im.is_negative() {
                write!(f, "+{im}i")
            } else {
                write!(f, "{im}i")
            }
        };
        if self.re.is_zero() {
            im_part(f, &self.im, false)
        } else {
            write!(f, "{}", self.re)?;
            im_part(f, &self.im, true)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
