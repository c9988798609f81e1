//! Serialized forms shared by the file formats.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, Complex, Precision};

/// Complex number as `[re, im]`. Written as decimal strings; plain JSON
/// numbers are accepted on input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexPair(pub [NumberText; 2]);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberText {
    Text(String),
    Number(f64),
}

impl NumberText {
    fn text(&self) -> String {
        match self {
            NumberText::Text(s) => s.clone(),
            NumberText::Number(x) => format!("{x:e}"),
        }
    }
}

impl ComplexPair {
    pub fn from_complex(z: &Complex) -> Self {
        let [re, im] = z.to_decimal_pair();
        ComplexPair([NumberText::Text(re), NumberText::Text(im)])
    }

    pub fn to_complex(&self, prec: Precision) -> Result<Complex, AlgebraError> {
        Complex::parse_pair(&self.0[0].text(), &self.0[1].text(), prec)
    }
}

impl From<&Complex> for ComplexPair {
    fn from(z: &Complex) -> Self {
        ComplexPair::from_complex(z)
    }
}

/// Branch seed `{"s": [re, im], "u": [re, im]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedFile {
    pub s: ComplexPair,
    pub u: ComplexPair,
}

impl SeedFile {
    pub fn new(s: &Complex, u: &Complex) -> Self {
        SeedFile { s: s.into(), u: u.into() }
    }

    pub fn parse(text: &str, prec: Precision) -> Result<(Complex, Complex), AlgebraError> {
        let f: SeedFile = serde_json::from_str(text).map_err(|e| AlgebraError::Parse(format!("seed file: {e}")))?;
        Ok((f.s.to_complex(prec)?, f.u.to_complex(prec)?))
    }
}
