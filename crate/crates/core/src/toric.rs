//! Affine toric varieties `X = Spec K[L]` for a torus `T` of rank `n` and a
//! finitely generated semigroup `L ⊂ Ξ(T) = Z^n`.

use serde::Serialize;

use crate::lattice_cone::semigroup::ser_verdict;
use crate::lattice_cone::{
    generated_group, is_saturated, AffineSemigroup, Face, GeneratedGroup, LatticeVector, PolyCone,
    Saturation,
};
use crate::Result;

/// A `T`-orbit, labelled by the face `M` of `K` whose characters are
/// invertible on it. Its closure is cut out by the radical ideal spanned by
/// the characters in `L ∖ M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitFace {
    pub dim: usize,
    /// Extreme rays of the face (the lineality of `K` is implicit).
    pub rays: Vec<LatticeVector>,
    #[serde(skip)]
    pub face: Face,
}

/// The radical invariant ideal `I_M = span{χ : χ ∈ L ∖ M}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealFace {
    pub face_dim: usize,
    pub ideal: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToricReport {
    pub rank: usize,
    pub cone: PolyCone,
    pub group: GeneratedGroup,
    pub effective: bool,
    /// `false` when `L` does not span `Q^n`, i.e. only a quotient torus acts
    /// effectively.
    pub solid: bool,
    #[serde(serialize_with = "ser_verdict")]
    pub normal: Saturation,
    pub witness: Option<LatticeVector>,
    pub orbit_count: Option<usize>,
    pub orbit_faces: Option<Vec<OrbitFace>>,
    pub ideal_faces: Option<Vec<IdealFace>>,
    pub notes: Vec<String>,
}

impl ToricReport {
    pub fn is_inconclusive(&self) -> bool {
        self.normal == Saturation::Inconclusive
    }
}

/// Effectiveness, normality and the orbit/ideal face correspondence.
pub fn analyze_toric(
    rank: usize,
    generators: &[LatticeVector],
    budget: usize,
) -> Result<ToricReport> {
    let sg = AffineSemigroup::new(rank, generators.to_vec())?;
    let cone = sg.cone();
    let group = generated_group(&sg);
    let effective = group.is_whole_lattice();
    let solid = cone.is_solid();
    let normal = is_saturated(&sg, budget)?;

    let mut notes = Vec::new();
    if !solid {
        notes.push(format!(
            "semigroup spans a rank {} subspace; only a quotient torus of that rank acts effectively",
            cone.dim()
        ));
    } else if !effective {
        notes.push("torus acts with a finite kernel".to_string());
    }

    let (orbit_faces, ideal_faces) = if normal == Saturation::Saturated {
        let (orbits, ideals) = face_correspondence(&cone);
        (Some(orbits), Some(ideals))
    } else {
        (None, None)
    };
    Ok(ToricReport {
        rank,
        witness: normal.witness().cloned(),
        orbit_count: orbit_faces.as_ref().map(Vec::len),
        cone,
        group,
        effective,
        solid,
        normal,
        orbit_faces,
        ideal_faces,
        notes,
    })
}

/// Orbits and radical ideals indexed by the faces of `cone`.
pub(crate) fn face_correspondence(cone: &PolyCone) -> (Vec<OrbitFace>, Vec<IdealFace>) {
    let rays = cone.rays();
    let faces = cone.face_lattice();
    let orbits: Vec<OrbitFace> = faces
        .iter()
        .map(|f| OrbitFace {
            dim: f.dim,
            rays: f.rays.iter().map(|&i| rays[i].clone()).collect(),
            face: f.clone(),
        })
        .collect();
    let ideals = orbits
        .iter()
        .map(|o| {
            let span: Vec<String> = o.rays.iter().map(ToString::to_string).collect();
            let m = if o.rays.is_empty() && cone.lineality().is_empty() {
                "{0}".to_string()
            } else if o.face.dim == cone.dim() {
                "K".to_string()
            } else {
                format!("cone({})", span.join(","))
            };
            IdealFace {
                face_dim: o.dim,
                ideal: format!("L \\ {m}"),
            }
        })
        .collect();
    (orbits, ideals)
}
