use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Facts about an unbounded model space that the lower-bound theorem needs.
/// These are recorded, not computed: asymptotic dimension cannot be read
/// off a finite window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpaceDescriptor {
    pub name: String,
    /// `n` with `asdim X >= n`.
    pub asdim_lower: usize,
    /// Whether some `lambda != 1` makes `lambda X` isometric to `X`.
    pub stabilizer_nontrivial: bool,
    pub provenance: String,
}

/// Euclidean `R^n`: `asdim R^n = n` and every dilation is a similarity.
pub fn euclidean(n: usize) -> ModelSpaceDescriptor {
    assert!(n >= 1, "R^0 is not a model space");
    ModelSpaceDescriptor {
        name: format!("R{n}"),
        asdim_lower: n,
        stabilizer_nontrivial: true,
        provenance: format!(
            "asdim R^{n} = {n} (classical; holds for every {n}-dimensional normed space by norm \
             equivalence); x -> lambda x maps lambda R^{n} isometrically onto R^{n} for all lambda > 0"
        ),
    }
}

/// The integer lattice `Z^2`: coarsely equivalent to `R^2`, but `lambda Z^2`
/// has minimal distance `lambda`, so only `lambda = 1` stabilizes it.
pub fn integer_lattice_2d() -> ModelSpaceDescriptor {
    ModelSpaceDescriptor {
        name: "Z2".into(),
        asdim_lower: 2,
        stabilizer_nontrivial: false,
        provenance: "Z^2 is quasi-isometric to R^2, so asdim Z^2 = 2; the minimal distance of \
                     lambda Z^2 is lambda, so the stabilizer is trivial"
            .into(),
    }
}

/// Built-in descriptors, in display order.
pub fn model_registry() -> Vec<ModelSpaceDescriptor> {
    vec![euclidean(1), euclidean(2), euclidean(3), integer_lattice_2d()]
}

/// Looks up `R<n>` for any `n >= 1`, or another registry entry by name.
pub fn lookup_model(name: &str) -> Result<ModelSpaceDescriptor> {
    if let Some(n) = name.strip_prefix('R').and_then(|d| d.parse::<usize>().ok()) {
        if n >= 1 {
            return Ok(euclidean(n));
        }
    }
    model_registry()
        .into_iter()
        .find(|m| m.name == name)
        .ok_or_else(|| Error::UnknownModel(name.to_string()))
}
