use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::theta::qpow;
use crate::{Error, Result};

/// The complex quadruple `(a, b, q, p)`; `p` is the nome and always satisfies `|p| < 1`.
///
/// Serialised as `{"a":[re,im],"b":[re,im],"q":[re,im],"p":[re,im]}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct ParameterSet {
    pub a: C64,
    pub b: C64,
    pub q: C64,
    pub p: C64,
}

#[derive(Deserialize)]
struct RawParams {
    a: C64,
    b: C64,
    q: C64,
    p: C64,
}

impl TryFrom<RawParams> for ParameterSet {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        ParameterSet::new(raw.a, raw.b, raw.q, raw.p)
    }
}

fn finite(v: C64) -> bool {
    v.re.is_finite() && v.im.is_finite()
}

impl ParameterSet {
    pub fn new(a: C64, b: C64, q: C64, p: C64) -> Result<Self> {
        if ![a, b, q, p].iter().all(|&v| finite(v)) {
            return Err(Error::Domain("parameters must be finite".into()));
        }
        if p.norm().is_nan() || p.norm() >= 1.0 {
            return Err(Error::Domain(format!("nome must satisfy |p| < 1, got |p| = {}", p.norm())));
        }
        Ok(ParameterSet { a, b, q, p })
    }

    /// Parameters for the elliptic family, which additionally needs `a, b, q ≠ 0`.
    pub fn elliptic(a: C64, b: C64, q: C64, p: C64) -> Result<Self> {
        let ps = Self::new(a, b, q, p)?;
        ps.require_elliptic()?;
        Ok(ps)
    }

    pub fn require_elliptic(&self) -> Result<()> {
        let zero = C64::new(0.0, 0.0);
        for (name, v) in [("a", self.a), ("b", self.b), ("q", self.q)] {
            if v == zero {
                return Err(Error::Domain(format!("{name} must be nonzero for elliptic weights")));
            }
        }
        Ok(())
    }

    /// `(a q^u, b q^v, q, p)`.
    pub fn shifted(&self, u: i64, v: i64) -> Self {
        ParameterSet {
            a: self.a * qpow(self.q, u),
            b: self.b * qpow(self.q, v),
            ..*self
        }
    }

    /// `(b, a, q, p)`.
    pub fn swapped(&self) -> Self {
        ParameterSet {
            a: self.b,
            b: self.a,
            ..*self
        }
    }

    /// A short stable fingerprint of the exact bit patterns, used in reports.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        for v in [self.a, self.b, self.q, self.p] {
            h.update(v.re.to_bits().to_le_bytes());
            h.update(v.im.to_bits().to_le_bytes());
        }
        let out = h.finalize();
        out[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_large_nome() {
        let one = C64::new(1.0, 0.0);
        assert!(ParameterSet::new(one, one, one, C64::new(0.6, 0.8)).is_err());
        assert!(ParameterSet::new(one, one, one, C64::new(0.6, 0.7)).is_ok());
    }

    #[test]
    fn elliptic_needs_nonzero_parameters() {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        assert!(ParameterSet::elliptic(zero, one, one, zero).is_err());
        assert!(ParameterSet::new(zero, one, one, zero).is_ok());
    }

    #[test]
    fn json_shape() {
        let ps = ParameterSet::new(
            C64::new(1.0, 2.0),
            C64::new(0.5, 0.0),
            C64::new(0.3, -0.1),
            C64::new(0.1, 0.0),
        )
        .unwrap();
        let text = serde_json::to_string(&ps).unwrap();
        assert_eq!(text, r#"{"a":[1.0,2.0],"b":[0.5,0.0],"q":[0.3,-0.1],"p":[0.1,0.0]}"#);
        let back: ParameterSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, ps);
        assert!(serde_json::from_str::<ParameterSet>(r#"{"a":[1,0],"b":[1,0],"q":[1,0],"p":[2,0]}"#).is_err());
    }
}
