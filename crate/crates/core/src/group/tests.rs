use proptest::prelude::*;

use super::*;
use crate::constructions::{build_family, FamilySpec};

fn family(tokens: &str) -> Group {
    build_family(&FamilySpec::parse(&[tokens]).unwrap()).unwrap()
}

fn perm_id(g: &Group, images: &[u32]) -> ElementId {
    g.elements().find(|&x| g.permutation_of(x).unwrap() == images).expect("element present")
}

#[test]
fn identity_is_index_zero() {
    for t in ["symmetric 4", "cyclic 12", "heisenberg 3", "psl2 5", "wreath cyclic 2 3"] {
        let g = family(t);
        for x in g.elements() {
            assert_eq!(g.mul(g.identity(), x), x);
            assert_eq!(g.mul(x, g.identity()), x);
            assert_eq!(g.power(x, 0), g.identity());
        }
        assert_eq!(g.element_order(g.identity()), 1);
    }
}

#[test]
fn s3_basics() {
    let g = family("symmetric 3");
    let t = perm_id(&g, &[1, 0, 2]);
    assert_eq!(g.mul(t, t), ElementId::IDENTITY);
    assert_eq!(g.element_order(t), 2);
    assert_eq!(g.class_size_multiset(), vec![1, 2, 3]);
    assert_eq!(g.centralizer(&[t]).unwrap(), vec![ElementId::IDENTITY, t]);
    assert_eq!(g.centralizer(&[ElementId::IDENTITY]).unwrap().len(), 6);
    assert!(g.centralizer(&[]).is_err());
}

#[test]
fn composition_is_left_to_right() {
    // x^(ab) = (x^a)^b
    let g = family("symmetric 3");
    let a = perm_id(&g, &[1, 0, 2]);
    let b = perm_id(&g, &[0, 2, 1]);
    assert_eq!(g.permutation_of(g.mul(a, b)).unwrap(), vec![2, 0, 1]);
}

#[test]
fn out_of_range_indices() {
    let g = family("cyclic 6");
    let bad = ElementId(6);
    assert!(matches!(g.checked_multiply(bad, ElementId(1)), Err(FszError::Usage(_))));
    assert!(g.checked_inverse(bad).is_err());
    assert!(g.checked_power(bad, 3).is_err());
    assert!(g.checked_element_order(bad).is_err());
    assert!(g.centralizer(&[bad]).is_err());
}

#[test]
fn power_handles_negative_exponents() {
    let g = family("dihedral 7");
    for x in g.elements() {
        assert_eq!(g.power(x, -1), g.inverse(x));
        assert_eq!(g.mul(g.power(x, -3), g.power(x, 3)), g.identity());
        assert_eq!(g.power(x, g.exponent() as i64), g.identity());
    }
}

#[test]
fn exponents_of_examples() {
    assert_eq!(family("cyclic 10").exponent(), 10);
    assert_eq!(family("symmetric 7").exponent(), 420);
    assert_eq!(family("wreath cyclic 3 3").exponent(), 9);
}

#[test]
fn class_counts() {
    assert_eq!(family("psl2 5").conjugacy_classes().len(), 5);
    assert_eq!(family("abelian 2,6").conjugacy_classes().len(), 12);
    assert_eq!(family("symmetric 5").conjugacy_classes().len(), 7);
}

#[test]
fn class_representative_is_smallest_member() {
    let g = family("symmetric 4");
    let mut covered = 0;
    for (i, c) in g.conjugacy_classes().iter().enumerate() {
        assert_eq!(c.representative, c.members[0]);
        assert_eq!(c.size() * c.centralizer_order, g.order());
        assert_eq!(g.class_centralizer(i).len(), c.centralizer_order);
        for &m in &c.members {
            assert_eq!(g.class_index(m), i);
        }
        covered += c.size();
    }
    assert_eq!(covered, g.order());
}

#[test]
fn symmetric_centralizer_of_cycle_products() {
    // e disjoint r-cycles in S_N centralize a group of order e! r^e (N = e r)
    for (e, r) in [(2u32, 3u32), (3, 2), (2, 2), (1, 5)] {
        let n = (e * r) as usize;
        let g = family(&format!("symmetric {n}"));
        let mut img: Vec<u32> = (0..n as u32).collect();
        for block in 0..e {
            for i in 0..r {
                img[(block * r + i) as usize] = block * r + (i + 1) % r;
            }
        }
        let x = perm_id(&g, &img);
        let fact: usize = (1..=e as usize).product();
        assert_eq!(g.centralizer(&[x]).unwrap().len(), fact * (r as usize).pow(e));
    }
}

#[test]
fn as_group_examples() {
    let s4 = family("symmetric 4");
    let full = s4.as_group(&s4.all_elements()).unwrap();
    assert_eq!(full.order(), 24);
    assert_eq!(full.conjugacy_classes().len(), s4.conjugacy_classes().len());
    let t = perm_id(&s4, &[1, 0, 2, 3]);
    assert_eq!(s4.as_group(&s4.centralizer(&[t]).unwrap()).unwrap().order(), 4);
    let s5 = family("symmetric 5");
    let c5 = perm_id(&s5, &[1, 2, 3, 4, 0]);
    let c = s5.as_group(&s5.centralizer(&[c5]).unwrap()).unwrap();
    assert_eq!(c.order(), 5);
    assert!(c.is_abelian());
    assert_eq!(c.exponent(), 5);
    let not_closed = vec![ElementId::IDENTITY, t, perm_id(&s4, &[0, 2, 1, 3])];
    assert!(matches!(s4.as_group(&not_closed), Err(FszError::Structural(_))));
    assert!(s4.as_group(&[t]).is_err());
}

#[test]
fn as_group_agrees_with_parent() {
    let g = family("psl2 7");
    let x = g.conjugacy_classes()[2].representative;
    let members = g.centralizer(&[x]).unwrap();
    let h = g.as_group(&members).unwrap();
    for a in h.elements() {
        assert_eq!(h.restrict(h.embed(a).unwrap()), Some(a));
        for b in h.elements() {
            assert_eq!(h.embed(h.mul(a, b)).unwrap(), g.mul(h.embed(a).unwrap(), h.embed(b).unwrap()));
        }
    }
}

#[test]
fn power_class_blocks() {
    let g = family("cyclic 30");
    let pcp = g.rational_power_classes();
    let mut seen = 0;
    for b in &pcp.blocks {
        let phi = (1..=b.order.max(1)).filter(|m| m.gcd(&b.order) == 1).count();
        let expected = if b.order <= 2 { 1 } else { phi };
        assert_eq!(b.members.len(), expected);
        assert_eq!(b.leader, b.members[0].0);
        for &(x, m) in &b.members {
            assert_eq!(g.power(b.leader, m as i64), x);
            assert_eq!(pcp.block_of(x).leader, b.leader);
        }
        seen += b.members.len();
    }
    assert_eq!(seen, g.order());
    let five = g.elements().find(|&x| g.element_order(x) == 5).unwrap();
    assert_eq!(pcp.block_of(five).members.len(), 4);
    let six = g.elements().find(|&x| g.element_order(x) == 6).unwrap();
    assert_eq!(pcp.block_of(six).members.len(), 2);
    let two = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
    assert_eq!(pcp.block_of(two).members.len(), 1);
}

#[test]
fn direct_product_examples() {
    let a = family("cyclic 2");
    let b = family("cyclic 3");
    let p = Group::direct_product(&a, &b).unwrap();
    assert_eq!((p.order(), p.exponent()), (6, 6));
    let x = p.pair(ElementId(1), ElementId(2)).unwrap();
    assert_eq!(p.project(x), Some((ElementId(1), ElementId(2))));
    let s3 = family("symmetric 3");
    let t = Group::direct_product(&s3, &Group::trivial()).unwrap();
    assert_eq!(t.class_size_multiset(), s3.class_size_multiset());
    assert_eq!(t.permutation_degree(), Some(4));
}

#[test]
fn cayley_table_backend() {
    // Z_4 by table
    let n = 4;
    let table: Vec<u32> = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    let g = Group::from_cayley_table("z4", n, table).unwrap();
    assert_eq!(g.exponent(), 4);
    assert!(g.is_abelian());
    let mut bad: Vec<u32> = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    bad[5] = 3;
    assert!(Group::from_cayley_table("bad", n, bad).is_err());
}

#[test]
fn abelian_basis_coordinates() {
    for t in ["abelian 2,4,4", "cyclic 12", "abelian 3,9", "cyclic 1"] {
        let g = family(t);
        let basis = g.abelian_basis().unwrap();
        assert_eq!(basis.character_count(), g.order());
        assert_eq!(basis.exponent(), g.exponent());
        for x in g.elements() {
            let k = &basis.coordinates[x.index()];
            let back = k
                .iter()
                .zip(&basis.generators)
                .fold(ElementId::IDENTITY, |acc, (&e, &b)| g.mul(acc, g.power(b, e as i64)));
            assert_eq!(back, x);
        }
        // every label is a homomorphism to Z_E
        let e = basis.exponent();
        for label in basis.character_labels() {
            for a in g.elements() {
                for b in g.elements() {
                    let lhs = basis.character_exponent(&label, g.mul(a, b));
                    let rhs = (basis.character_exponent(&label, a) + basis.character_exponent(&label, b)) % e;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
    assert!(matches!(family("symmetric 3").abelian_basis(), Err(FszError::Unsupported(_))));
}

#[test]
fn large_backend_without_table() {
    let g = family("wreath cyclic 5 5");
    assert_eq!(g.order(), 15625);
    let gens = g.generators().to_vec();
    assert_eq!(g.generated_subgroup(&gens).unwrap().len(), g.order());
    for &a in &gens {
        assert_eq!(g.mul(a, g.inverse(a)), ElementId::IDENTITY);
    }
}

fn small_groups() -> Vec<Group> {
    ["symmetric 4", "dihedral 6", "heisenberg 3", "psl2 5", "wreath cyclic 3 2", "product dihedral 3 cyclic 4"]
        .iter()
        .map(|t| family(t))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn associativity_and_inverses(gi in 0usize..6, a in 0u32..10_000, b in 0u32..10_000, c in 0u32..10_000) {
        let groups = small_groups();
        let g = &groups[gi];
        let n = g.order() as u32;
        let (a, b, c) = (ElementId(a % n), ElementId(b % n), ElementId(c % n));
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inverse(a)), ElementId::IDENTITY);
        prop_assert_eq!(g.mul(g.inverse(a), a), ElementId::IDENTITY);
    }

    #[test]
    fn orbit_stabilizer(gi in 0usize..6) {
        let groups = small_groups();
        let g = &groups[gi];
        for c in g.conjugacy_classes() {
            prop_assert_eq!(c.size() * g.centralizer(&[c.representative]).unwrap().len(), g.order());
        }
    }

    #[test]
    fn unit_powers_permute_blocks(gi in 0usize..6, m in 1i64..500) {
        let groups = small_groups();
        let g = &groups[gi];
        prop_assume!(m.unsigned_abs().gcd(&(g.order() as u64)) == 1);
        let pcp = g.rational_power_classes();
        for b in &pcp.blocks {
            let mut image: Vec<ElementId> = b.members.iter().map(|&(x, _)| g.power(x, m)).collect();
            let mut orig: Vec<ElementId> = b.members.iter().map(|&(x, _)| x).collect();
            image.sort_unstable();
            orig.sort_unstable();
            prop_assert_eq!(image, orig);
        }
    }

    #[test]
    fn element_order_divides_exponent(gi in 0usize..6, a in 0u32..10_000) {
        let groups = small_groups();
        let g = &groups[gi];
        let a = ElementId(a % g.order() as u32);
        let o = g.element_order(a);
        prop_assert_eq!(g.exponent() % o, 0);
        prop_assert_eq!(g.power(a, o as i64), ElementId::IDENTITY);
        for k in 1..o {
            prop_assert_ne!(g.power(a, k as i64), ElementId::IDENTITY);
        }
    }
}
