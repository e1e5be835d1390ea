use serde::{Deserialize, Serialize};

use crate::function_space::{FunctionDescriptor, RationalFunction};

use super::{build_scheme, Genus, SchemeError, SchemeInstance, SchemeParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveCoefficients {
    pub a: u64,
    pub b: u64,
}

/// Factored forms of every basis, in the order the protocol uses them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDescriptors {
    pub info: Vec<FunctionDescriptor>,
    pub noise: Vec<FunctionDescriptor>,
    pub completion: Vec<FunctionDescriptor>,
    pub privacy: Vec<FunctionDescriptor>,
    /// One list per fragment.
    pub security: Vec<Vec<FunctionDescriptor>>,
}

/// JSON form of a [`SchemeInstance`]. Points are coordinate arrays:
/// `[x]` on the line, `[x, y]` on a curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeDescriptor {
    pub p: u64,
    pub genus: Genus,
    pub curve: Option<CurveCoefficients>,
    #[serde(rename = "X")]
    pub x: usize,
    #[serde(rename = "T")]
    pub t: usize,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub fragment_points: Vec<Vec<u64>>,
    pub eval_points: Vec<Vec<u64>>,
    pub basis_descriptors: BasisDescriptors,
    pub seed: u64,
}

impl SchemeDescriptor {
    pub fn params(&self) -> SchemeParams {
        SchemeParams {
            p: self.p,
            genus: self.genus,
            x: self.x,
            t: self.t,
            l: self.l,
            curve: self.curve.map(|c| (c.a, c.b)),
            seed: self.seed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, SchemeError> {
        Ok(serde_json::from_str(s)?)
    }

    /// Rebuilds the scheme and checks it reproduces this descriptor exactly.
    pub fn instantiate(&self) -> Result<SchemeInstance, SchemeError> {
        let inst = build_scheme(&self.params())?;
        let rebuilt = inst.descriptor();
        if let Some(field) = first_difference(self, &rebuilt) {
            return Err(SchemeError::DescriptorMismatch(field.to_string()));
        }
        Ok(inst)
    }
}

fn first_difference(a: &SchemeDescriptor, b: &SchemeDescriptor) -> Option<&'static str> {
    let checks: [(&str, bool); 6] = [
        ("N", a.n == b.n),
        ("curve", a.curve == b.curve),
        ("fragment_points", a.fragment_points == b.fragment_points),
        ("eval_points", a.eval_points == b.eval_points),
        ("basis_descriptors", a.basis_descriptors == b.basis_descriptors),
        ("other fields", a == b),
    ];
    checks.into_iter().find(|(_, ok)| !ok).map(|(name, _)| name)
}

fn describe_all(fs: &[RationalFunction]) -> Vec<FunctionDescriptor> {
    fs.iter()
        .map(|f| f.descriptor().expect("scheme bases are factored"))
        .collect()
}

impl SchemeInstance {
    pub fn descriptor(&self) -> SchemeDescriptor {
        SchemeDescriptor {
            p: self.params.p,
            genus: self.params.genus,
            curve: self.params.curve.map(|(a, b)| CurveCoefficients { a, b }),
            x: self.x(),
            t: self.t(),
            l: self.l(),
            n: self.n(),
            fragment_points: self.fragment_points.iter().map(|p| p.coords()).collect(),
            eval_points: self.eval_points.iter().map(|p| p.coords()).collect(),
            basis_descriptors: BasisDescriptors {
                info: describe_all(&self.info_basis),
                noise: describe_all(&self.noise_basis),
                completion: describe_all(&self.completion_basis),
                privacy: describe_all(&self.privacy_basis),
                security: self.security_bases.iter().map(|b| describe_all(b)).collect(),
            },
            seed: self.params.seed,
        }
    }
}
