//! JSON payloads. Every struct round-trips through serde unchanged.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use dscat_core::BigRational;

/// Largest integer a double holds exactly.
const SAFE_INTEGER: i64 = (1 << 53) - 1;

/// An exact rational. Serialized as a JSON number when it is an integer of
/// magnitude at most 2^53 − 1, otherwise as a string `"n"` or `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub BigRational);

impl From<BigInt> for Exact {
    fn from(v: BigInt) -> Self {
        Exact(BigRational::from_integer(v))
    }
}

impl From<&BigInt> for Exact {
    fn from(v: &BigInt) -> Self {
        v.clone().into()
    }
}

impl From<&BigRational> for Exact {
    fn from(v: &BigRational) -> Self {
        Exact(v.clone())
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Some(v) = self.0.numer().to_i64().filter(|v| v.abs() <= SAFE_INTEGER) {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Exact {
    type Err = String;

    fn from_str(t: &str) -> Result<Self, String> {
        let parse = |x: &str| BigInt::from_str(x.trim()).map_err(|_| format!("not an integer: {x:?}"));
        match t.split_once('/') {
            Some((p, q)) => {
                let q = parse(q)?;
                if !q.is_zero() {
                    Ok(Exact(BigRational::new(parse(p)?, q)))
                } else {
                    Err(format!("zero denominator in {t:?}"))
                }
            }
            None => Ok(parse(t)?.into()),
        }
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ExactVisitor;

        impl Visitor<'_> for ExactVisitor {
            type Value = Exact;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string \"n\" or \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exact, E> {
                Ok(BigInt::from(v).into())
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exact, E> {
                Ok(BigInt::from(v).into())
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Exact, E> {
                v.parse().map_err(E::custom)
            }
        }

        d.deserialize_any(ExactVisitor)
    }
}

pub fn exact_vec<'a, T: 'a>(v: impl IntoIterator<Item = &'a T>) -> Vec<Exact>
where
    Exact: From<&'a T>,
{
    v.into_iter().map(Exact::from).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixPayload {
    pub d: usize,
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    pub rows: Vec<Vec<Exact>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasesPayload {
    pub d: usize,
    pub method: String,
    pub count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsPayload {
    pub integral: bool,
    pub nonnegative: bool,
    pub m_sequence: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReconstructPayload {
    pub d: usize,
    pub basis: Vec<usize>,
    pub f: Vec<Exact>,
    pub h: Vec<Exact>,
    pub g: Vec<Exact>,
    pub flags: FlagsPayload,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorsPayload {
    pub d: usize,
    pub f: Vec<Exact>,
    pub h: Vec<Exact>,
    pub g: Vec<Exact>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidatePayload {
    pub d: usize,
    pub f: Vec<Exact>,
    pub h: Vec<Exact>,
    pub g: Vec<Exact>,
    pub nonnegative: bool,
    pub dehn_sommerville: bool,
    pub m_sequence: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsBasisPayload {
    pub d: usize,
    pub set: Vec<usize>,
    pub is_basis: bool,
    pub determinant: Exact,
    pub routing: bool,
    pub predicate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DyckPayload {
    pub word: String,
    pub upsteps: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalanPayload {
    pub n: usize,
    pub count: Exact,
    pub paths: Vec<DyckPayload>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixedKind {
    Loop,
    Coloop,
}

/// A one-line permutation entry: an image, or a decorated fixed point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermEntry {
    Image(usize),
    Fixed { fixed: FixedKind },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositroidPayload {
    pub d: usize,
    pub ground: usize,
    pub necklace: Vec<Vec<usize>>,
    pub decorated_permutation: Vec<PermEntry>,
    pub exchange_map: Vec<PermEntry>,
    pub display: String,
    pub matches_closed_form: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleRow {
    pub d: usize,
    pub subsets: usize,
    pub bases: usize,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremRow {
    pub n: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckPayload {
    pub d_min: usize,
    pub d_max: usize,
    pub oracles: Vec<OracleRow>,
    pub main_theorem: Vec<TheoremRow>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathPayload {
    pub source: usize,
    pub sink: usize,
    pub nodes: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoutePayload {
    pub d: usize,
    pub sinks: Vec<usize>,
    pub flow: usize,
    pub routable: bool,
    pub paths: Vec<PathPayload>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambiguity: Option<Box<AmbiguityPayload>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorPayload {
    pub error: ErrorBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbiguityPayload {
    pub labels: Vec<usize>,
    pub determinant: Exact,
    pub consistent: bool,
    pub polytopal: bool,
    pub completions: Vec<Vec<Exact>>,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("payloads always serialize");
    s.push('\n');
    s
}
