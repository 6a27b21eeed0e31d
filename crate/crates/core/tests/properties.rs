mod common;

#[test]
fn scalar_ring_axioms() {
    common::ring_axioms(512).unwrap();
}

#[test]
fn elevation_preserves_values() {
    common::elevation_consistency(256).unwrap();
}

#[test]
fn lagrange_basis_interpolates() {
    common::lagrange_interpolates(48).unwrap();
}

#[test]
fn certified_defects_nonnegative() {
    common::certified_nonnegative(10_000).unwrap();
}

#[test]
fn gram_determinant_identity() {
    common::gram_determinant(128).unwrap();
}
