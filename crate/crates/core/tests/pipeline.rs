use ccr_core::character::Character;
use ccr_core::heisenberg::{induced_rep, rep_from_pair, trace_distance, HEIS_CAP};
use ccr_core::pairs::{random_instance, regular, schrodinger, CcrPair, Scope};
use ccr_core::ring::{FiniteRing, RingDescriptor};
use ccr_core::svn::{commutant_dim, decompose, pairs_equivalent, svn_intertwiner, DecomposeOptions};
use ccr_core::Error;

fn ring(s: &str) -> FiniteRing {
    FiniteRing::new(&RingDescriptor::parse(s).unwrap()).unwrap()
}

#[test]
fn random_pair_round_trip() {
    let r = ring("fp:3");
    let l = Character::on_ring(&r, &[1]).unwrap();
    let p = random_instance(&r, 1, &l, 2, 11).unwrap();

    let w = svn_intertwiner(&p).unwrap();
    assert!(w.residual() < 1e-9 && w.unitarity_defect < 1e-10);

    let dec = decompose(&p, DecomposeOptions { seed: 3, ..Default::default() }).unwrap();
    assert_eq!(dec.multiplicity, 2);
    assert!(dec.residual < 1e-8);
    assert_eq!(commutant_dim(&p).unwrap(), 4);

    let file = serde_json::to_string(&p.to_file()).unwrap();
    let back = CcrPair::from_file(&serde_json::from_str(&file).unwrap()).unwrap();
    assert!(back.verify_ccr(Scope::All).unwrap() < 1e-12);
    assert!(pairs_equivalent(&p, &back).unwrap());
}

#[test]
fn matrix_ring_trace_character() {
    let r = ring("mat:2:fp:2");
    let l = Character::standard_trace(&r).unwrap();
    let s = schrodinger(&r, 1, &l).unwrap();
    assert_eq!(commutant_dim(&s).unwrap(), 1);
    let w = svn_intertwiner(&s).unwrap();
    assert!(w.residual() < 1e-9);
    let reg = rep_from_pair(&regular(&r, 1, &l).unwrap()).unwrap();
    let ind = induced_rep(&r, 1, &l).unwrap();
    assert!(trace_distance(&reg, &ind, HEIS_CAP).unwrap() < 1e-8);
}

#[test]
fn degenerate_character_is_refused() {
    let r = ring("zmod:4");
    let l = Character::on_ring(&r, &[2]).unwrap();
    let s = schrodinger(&r, 1, &l).unwrap();
    match svn_intertwiner(&s) {
        Err(Error::Precondition(m)) => assert!(m.contains("not an isomorphism")),
        other => panic!("{:?}", other.map(|w| w.residual())),
    }
    assert!(decompose(&s, DecomposeOptions::default()).is_err());
}
