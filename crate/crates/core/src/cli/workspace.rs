//! JSON workspace files. Every scalar is a string `"p"` or `"p/q"`.

use std::collections::BTreeMap;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::finitemodel::{FiniteAlmostDirac, Subgroup};
use crate::lie::{DiracManinTriple, LieAlgebra, QuadraticLieData};
use crate::linalg::scalar::{format_scalar, parse_scalar};
use crate::linalg::{Matrix, Scalar, Subspace, SymmetricForm, Vector};

/// An exact rational read from / written as a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rat(pub Scalar);

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_scalar(&s).map(Rat).map_err(|_| de::Error::custom(format!("invalid rational {s:?}")))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(&self.0))
    }
}

pub type RawVector = Vec<Rat>;
pub type RawMatrix = Vec<Vec<Rat>>;

pub fn to_vector(v: &[Rat]) -> Vector {
    v.iter().map(|r| r.0.clone()).collect()
}

pub fn to_vectors(vs: &[RawVector]) -> Vec<Vector> {
    vs.iter().map(|v| to_vector(v)).collect()
}

pub fn to_matrix(m: &RawMatrix) -> Result<Matrix> {
    let rows = to_vectors(m);
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_rows(&rows)
}

pub fn raw_vector(v: &[Scalar]) -> RawVector {
    v.iter().map(|x| Rat(x.clone())).collect()
}

pub fn raw_matrix(m: &Matrix) -> RawMatrix {
    m.row_vectors().iter().map(|r| raw_vector(r)).collect()
}

pub fn raw_subspace(s: &Subspace) -> Vec<RawVector> {
    s.basis_vectors().iter().map(|v| raw_vector(v)).collect()
}

/// Builds the span of `vs` in `Q^ambient`, checking lengths.
pub fn to_subspace(ambient: usize, name: &str, vs: &[RawVector]) -> Result<Subspace> {
    if let Some(v) = vs.iter().find(|v| v.len() != ambient) {
        return Err(Error::DimMismatch(format!("subspace {name:?}: vector of length {} in Q^{ambient}", v.len())));
    }
    Ok(Subspace::span(ambient, &to_vectors(vs)))
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct LieSection {
    pub dim: usize,
    /// Sparse `[i, j, [e_i, e_j]]` entries with `i < j`.
    pub bracket: Vec<(usize, usize, RawVector)>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct FormSection {
    /// `β` as a symmetric matrix (the element of `S²d`), unless `metric` is set.
    pub gram: RawMatrix,
    #[serde(default)]
    pub metric: bool,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct TripleSection {
    pub g: String,
    pub h: String,
    #[serde(default)]
    pub k_generators: Vec<RawMatrix>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct GroupSection {
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct RepSection {
    pub matrices: Vec<RawMatrix>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct FiberSection {
    pub lambda: RawMatrix,
    #[serde(default)]
    pub subgroup: Option<Vec<usize>>,
    #[serde(default)]
    pub l: Option<Vec<RawVector>>,
}

/// Sections used by the triple commands.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct TripleWorkspace {
    pub lie_algebra: LieSection,
    pub form: FormSection,
    pub subspace: BTreeMap<String, Vec<RawVector>>,
    pub triple: TripleSection,
}

/// Sections used by `finite-check`.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct FiniteWorkspace {
    pub group: GroupSection,
    pub rep: RepSection,
    pub fiber: FiberSection,
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

impl TripleWorkspace {
    /// Workspace for `t` with subspaces `g`, `h` and the named extras.
    pub fn from_triple(t: &DiracManinTriple, extra: &[(&str, &Subspace)]) -> Self {
        let mut subspace = BTreeMap::new();
        subspace.insert("g".to_string(), raw_subspace(&t.g));
        subspace.insert("h".to_string(), raw_subspace(&t.h));
        for (name, s) in extra {
            subspace.insert(name.to_string(), raw_subspace(s));
        }
        TripleWorkspace {
            lie_algebra: LieSection {
                dim: t.dim(),
                bracket: t.algebra().entries().into_iter().map(|(i, j, v)| (i, j, raw_vector(&v))).collect(),
            },
            form: FormSection { gram: raw_matrix(t.beta().gram()), metric: false },
            subspace,
            triple: TripleSection {
                g: "g".into(),
                h: "h".into(),
                k_generators: t.k_generators.iter().map(raw_matrix).collect(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn subspace_vectors(&self, name: &str) -> Result<&[RawVector]> {
        self.subspace.get(name).map(|v| v.as_slice()).ok_or_else(|| Error::Input(format!("no subspace named {name:?}")))
    }

    pub fn subspace(&self, name: &str) -> Result<Subspace> {
        to_subspace(self.lie_algebra.dim, name, self.subspace_vectors(name)?)
    }

    /// Antisymmetry is enforced here; Jacobi and invariance are left to validation.
    pub fn algebra(&self) -> Result<LieAlgebra> {
        let n = self.lie_algebra.dim;
        let mut entries = Vec::new();
        for (i, j, v) in &self.lie_algebra.bracket {
            if *i >= n || *j >= n || v.len() != n {
                return Err(Error::DimMismatch(format!("bracket entry ({i}, {j}) does not fit dim {n}")));
            }
            entries.push((*i, *j, to_vector(v)));
        }
        LieAlgebra::from_brackets(n, &entries)
    }

    pub fn beta(&self) -> Result<SymmetricForm> {
        let m = to_matrix(&self.form.gram)?;
        let n = self.lie_algebra.dim;
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimMismatch(format!("form is {}x{}, algebra has dim {n}", m.rows(), m.cols())));
        }
        let f = SymmetricForm::new(m)?;
        if self.form.metric {
            f.inverse().ok_or_else(|| Error::InvalidQuadraticData("metric is degenerate".into()))
        } else {
            Ok(f)
        }
    }

    /// The triple as written, without validation.
    pub fn triple_unchecked(&self) -> Result<DiracManinTriple> {
        let n = self.lie_algebra.dim;
        let quad = QuadraticLieData { algebra: self.algebra()?, beta: self.beta()? };
        let mut gens = Vec::new();
        for (i, m) in self.triple.k_generators.iter().enumerate() {
            let m = to_matrix(m)?;
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimMismatch(format!("k generator {i} is not {n}x{n}")));
            }
            gens.push(m);
        }
        Ok(DiracManinTriple::new_unchecked(quad, self.subspace(&self.triple.g)?, self.subspace(&self.triple.h)?, gens))
    }
}

impl FiniteWorkspace {
    pub fn from_model(fa: &FiniteAlmostDirac, k: Option<&Subgroup>, l: Option<&Subspace>) -> Self {
        FiniteWorkspace {
            group: GroupSection { table: fa.group().table().to_vec() },
            rep: RepSection { matrices: fa.bullet().matrices().iter().map(raw_matrix).collect() },
            fiber: FiberSection {
                lambda: raw_matrix(fa.lambda().sharp()),
                subgroup: k.map(|k| k.elements().to_vec()),
                l: l.map(raw_subspace),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse_with_position() {
        let e = parse::<Vec<Rat>>("[\"1/2\",\n \"x\"]").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
        let v = parse::<Vec<Rat>>("[\"-3/6\", \"4\"]").unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), "[\"-1/2\",\"4\"]");
        assert!(parse::<Vec<Rat>>("[\"1/0\"]").is_err());
    }

    #[test]
    fn triple_round_trips() {
        let t = crate::lie::cartan_dirac_sl2();
        let ws = TripleWorkspace::from_triple(&t, &[]);
        let back: TripleWorkspace = parse(&ws.to_json()).unwrap();
        let t2 = back.triple_unchecked().unwrap();
        assert_eq!(t2.g, t.g);
        assert_eq!(t2.h, t.h);
        assert_eq!(t2.beta(), t.beta());
        assert_eq!(t2.algebra(), t.algebra());
    }

    #[test]
    fn missing_section_is_a_parse_error() {
        let e = parse::<TripleWorkspace>("{\"lie_algebra\": {\"dim\": 1, \"bracket\": []}}").unwrap_err();
        match e {
            Error::Parse { message, .. } => assert!(message.contains("form")),
            other => panic!("{other:?}"),
        }
    }
}
