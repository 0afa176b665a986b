//! Reference groups, built in code.

use exact_linalg::{parse_rational, RatMatrix};

use crate::affine::{AffineElement, GroupSpec};

fn affine(rows: &[&[&str]]) -> AffineElement {
    let m = RatMatrix::from_rows(
        rows.iter().map(|r| r.iter().map(|s| parse_rational(s).expect("fixture entry")).collect()).collect(),
    )
    .expect("fixture shape");
    AffineElement::from_affine_matrix(&m).expect("fixture matrix")
}

fn group(name: &str, dim: usize, gens: Vec<AffineElement>) -> GroupSpec {
    GroupSpec::new(dim, Some(name.to_string()), gens).expect("fixture dimensions")
}

/// The Hantzsche-Wendt group in its standard 3-dimensional form.
pub fn hw_standard() -> GroupSpec {
    let x = affine(&[&["1", "0", "0", "1/2"], &["0", "-1", "0", "1/2"], &["0", "0", "-1", "0"], &["0", "0", "0", "1"]]);
    let y = affine(&[&["-1", "0", "0", "0"], &["0", "1", "0", "1/2"], &["0", "0", "-1", "1/2"], &["0", "0", "0", "1"]]);
    group("hantzsche-wendt", 3, vec![x, y])
}

/// 4-dimensional group with BBNWZ label 05/01/06/006, generators `A`, `B`.
pub fn example_05_01_06_006() -> GroupSpec {
    let a = affine(&[
        &["0", "-1", "1", "0", "1/2"],
        &["-1", "0", "1", "0", "0"],
        &["0", "0", "1", "0", "1/2"],
        &["0", "0", "0", "-1", "1/2"],
        &["0", "0", "0", "0", "1"],
    ]);
    let b = affine(&[
        &["0", "1", "-1", "0", "1/2"],
        &["0", "1", "0", "0", "1/2"],
        &["-1", "1", "0", "0", "0"],
        &["0", "0", "0", "-1", "0"],
        &["0", "0", "0", "0", "1"],
    ]);
    group("05/01/06/006", 4, vec![a, b])
}

/// Unimodular change of basis that puts [`example_05_01_06_006`] into block form.
pub fn example_conjugator() -> AffineElement {
    affine(&[
        &["1", "1", "0", "0", "0"],
        &["0", "1", "0", "0", "0"],
        &["1", "0", "0", "1", "0"],
        &["0", "0", "1", "0", "0"],
        &["0", "0", "0", "0", "1"],
    ])
}

/// [`example_05_01_06_006`] after conjugation by [`example_conjugator`].
pub fn example_conjugated() -> GroupSpec {
    let a = affine(&[
        &["1", "0", "0", "0", "1/2"],
        &["0", "-1", "0", "1", "0"],
        &["0", "0", "-1", "0", "1/2"],
        &["0", "0", "0", "1", "0"],
        &["0", "0", "0", "0", "1"],
    ]);
    let b = affine(&[
        &["-1", "0", "0", "-1", "0"],
        &["0", "1", "0", "0", "1/2"],
        &["0", "0", "-1", "0", "0"],
        &["0", "0", "0", "1", "0"],
        &["0", "0", "0", "0", "1"],
    ]);
    group("05/01/06/006 (conjugated)", 4, vec![a, b])
}

/// The 3-dimensional kernel of the Calabi map of [`example_05_01_06_006`], in reference coordinates.
pub fn example_kernel() -> GroupSpec {
    let a = affine(&[&["1", "0", "0", "1/2"], &["0", "-1", "0", "0"], &["0", "0", "-1", "1/2"], &["0", "0", "0", "1"]]);
    let b = affine(&[&["-1", "0", "0", "0"], &["0", "1", "0", "1/2"], &["0", "0", "-1", "0"], &["0", "0", "0", "1"]]);
    group("05/01/06/006 kernel", 3, vec![a, b])
}

/// CARAT's min.88.1.1.15: 5-dimensional, holonomy D8, no Hantzsche-Wendt subgroup.
pub fn min88() -> GroupSpec {
    let g1 = affine(&[
        &["0", "1", "0", "0", "0", "0"],
        &["1", "0", "0", "0", "0", "0"],
        &["0", "0", "1", "0", "0", "1/2"],
        &["0", "0", "0", "-1", "0", "1/4"],
        &["0", "0", "0", "0", "-1", "0"],
        &["0", "0", "0", "0", "0", "1"],
    ]);
    let g2 = affine(&[
        &["1", "0", "0", "0", "0", "1/2"],
        &["0", "-1", "0", "0", "0", "0"],
        &["0", "0", "-1", "0", "0", "0"],
        &["0", "0", "0", "-1", "0", "0"],
        &["0", "0", "0", "0", "1", "1/2"],
        &["0", "0", "0", "0", "0", "1"],
    ]);
    group("min.88.1.1.15", 5, vec![g1, g2])
}

/// Klein bottle group: `diag(1, -1)` with translation `(1/2, 0)`.
pub fn klein_bottle() -> GroupSpec {
    group("klein-bottle", 2, vec![affine(&[&["1", "0", "1/2"], &["0", "-1", "0"], &["0", "0", "1"]])])
}

/// Infinite dihedral group (has 2-torsion, so not Bieberbach).
pub fn infinite_dihedral() -> GroupSpec {
    group("infinite-dihedral", 1, vec![affine(&[&["-1", "0"], &["0", "1"]])])
}

pub fn free_abelian(n: usize) -> GroupSpec {
    GroupSpec::free_abelian(n)
}

/// The named fixtures with their canonical file stems.
pub fn bundled() -> Vec<(&'static str, GroupSpec)> {
    vec![
        ("z1", free_abelian(1)),
        ("z2", free_abelian(2)),
        ("z3", free_abelian(3)),
        ("klein_bottle", klein_bottle()),
        ("hw_standard", hw_standard()),
        ("example_05_01_06_006", example_05_01_06_006()),
        ("min88", min88()),
        ("infinite_dihedral", infinite_dihedral()),
    ]
}
