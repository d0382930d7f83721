use fibrifold_core::irreducible::{inclusion_lattice, irreducible_names};

#[test]
fn minimal_inclusions() {
    let lattice = inclusion_lattice();
    assert_eq!(lattice.len(), 83);
}

#[test]
fn thirty_five_names() {
    assert_eq!(irreducible_names().len(), 35);
}
