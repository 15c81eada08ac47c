use std::collections::BTreeSet;

use proptest::prelude::*;

use maxsub::maximal::descriptor::sorted_members;
use maxsub::monoid::{Budget, FiniteMonoid};
use maxsub::oracle::{exhaustive_maximal, is_subsemigroup, verify_maximal, EXHAUSTIVE_CAP};
use maxsub::transform::{self, TransformKind};
use maxsub::{partition, DiagramKind, Element, Family, PartialTransformation, Partition};

fn transform_of(images: Vec<Option<usize>>) -> PartialTransformation {
    PartialTransformation::new(&images).expect("valid images")
}

fn arb_transform(n: usize) -> impl Strategy<Value = PartialTransformation> {
    proptest::collection::vec(proptest::option::of(1..=n), n).prop_map(transform_of)
}

fn transform_triple() -> impl Strategy<Value = [PartialTransformation; 3]> {
    (1usize..=10).prop_flat_map(|n| [arb_transform(n), arb_transform(n), arb_transform(n)])
}

/// A partition from block labels of the `2n` points, top points first.
fn partition_of(n: usize, labels: &[usize]) -> Partition {
    let mut blocks: Vec<Vec<i32>> = vec![Vec::new(); 2 * n];
    for (p, &l) in labels.iter().enumerate() {
        let point = if p < n { p as i32 + 1 } else { -((p - n) as i32 + 1) };
        blocks[l].push(point);
    }
    blocks.retain(|b| !b.is_empty());
    Partition::from_blocks(n, &blocks).expect("labels cover every point")
}

fn arb_partition(n: usize) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0..2 * n, 2 * n).prop_map(move |l| partition_of(n, &l))
}

fn partition_triple() -> impl Strategy<Value = [Partition; 3]> {
    (1usize..=8).prop_flat_map(|n| [arb_partition(n), arb_partition(n), arb_partition(n)])
}

/// Blocks as sets of signed points, for comparison independent of labelling.
fn block_set(blocks: Vec<Vec<i32>>) -> BTreeSet<BTreeSet<i32>> {
    blocks.into_iter().map(|b| b.into_iter().collect()).collect()
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Product by gluing the bottom row of `x` to the top row of `y` with a union-find
/// over three rows of points.
fn glued_product(n: usize, x: &Partition, y: &Partition) -> BTreeSet<BTreeSet<i32>> {
    let mut parent: Vec<usize> = (0..3 * n).collect();
    let slot = |p: i32, row: usize| row * n + p.unsigned_abs() as usize - 1;
    let join = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        parent[ra] = rb;
    };
    for (diagram, top, bottom) in [(x, 0, 1), (y, 1, 2)] {
        for block in diagram.blocks() {
            let places: Vec<usize> =
                block.iter().map(|&p| if p > 0 { slot(p, top) } else { slot(p, bottom) }).collect();
            for w in places.windows(2) {
                join(&mut parent, w[0], w[1]);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, BTreeSet<i32>> = Default::default();
    for i in 1..=n {
        let t = find(&mut parent, slot(i as i32, 0));
        groups.entry(t).or_default().insert(i as i32);
        let b = find(&mut parent, slot(i as i32, 2));
        groups.entry(b).or_default().insert(-(i as i32));
    }
    groups.into_values().collect()
}

fn small_monoid() -> impl Strategy<Value = (Family, usize)> {
    let hosts: Vec<(Family, usize)> = Family::all()
        .flat_map(|f| (1..=4).map(move |n| (f, n)))
        .filter(|&(f, n)| maxsub::element::enumerate(f, n, EXHAUSTIVE_CAP).is_ok())
        .collect();
    proptest::sample::select(hosts)
}

fn host(f: Family, n: usize) -> FiniteMonoid {
    FiniteMonoid::enumerate(f, n, &Budget::default()).expect("small host")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn transform_product_is_associative([a, b, c] in transform_triple()) {
        prop_assert_eq!(a.compose(&b).unwrap().compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
    }

    #[test]
    fn transform_product_acts_left_to_right([a, b, _c] in transform_triple()) {
        let ab = a.compose(&b).unwrap();
        for i in 1..=a.degree() {
            prop_assert_eq!(ab.image(i), a.image(i).and_then(|j| b.image(j)));
        }
    }

    #[test]
    fn transform_rank_never_grows([a, b, _c] in transform_triple()) {
        let ab = a.compose(&b).unwrap();
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn transform_text_round_trips(t in (1usize..=10).prop_flat_map(arb_transform)) {
        prop_assert_eq!(t.to_string().parse::<PartialTransformation>().unwrap(), t);
    }

    #[test]
    fn partial_perm_inverse(t in (1usize..=10).prop_flat_map(arb_transform)) {
        match t.inverse() {
            Some(inv) => {
                prop_assert!(t.is_partial_perm());
                prop_assert_eq!(t.compose(&inv).unwrap().compose(&t).unwrap(), t);
                prop_assert_eq!(inv.inverse().unwrap(), t);
            }
            None => prop_assert!(!t.is_partial_perm()),
        }
    }

    #[test]
    fn partition_product_is_associative([a, b, c] in partition_triple()) {
        prop_assert_eq!(a.compose(&b).unwrap().compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
    }

    #[test]
    fn partition_product_matches_gluing([a, b, _c] in partition_triple()) {
        let n = a.degree();
        prop_assert_eq!(block_set(a.compose(&b).unwrap().blocks()), glued_product(n, &a, &b));
    }

    #[test]
    fn star_axioms([a, b, _c] in partition_triple()) {
        prop_assert_eq!(a.star().star(), a);
        prop_assert_eq!(a.compose(&b).unwrap().star(), b.star().compose(&a.star()).unwrap());
        prop_assert_eq!(a.compose(&a.star()).unwrap().compose(&a).unwrap(), a);
    }

    #[test]
    fn partition_rank_never_grows([a, b, _c] in partition_triple()) {
        prop_assert!(a.compose(&b).unwrap().rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn partition_text_round_trips(p in (1usize..=8).prop_flat_map(arb_partition)) {
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }

    #[test]
    fn planar_and_annular_products_stay_so([a, b, _c] in partition_triple()) {
        let ab = a.compose(&b).unwrap();
        if a.is_planar() && b.is_planar() {
            prop_assert!(ab.is_planar());
        }
        if a.is_annular() && b.is_annular() {
            prop_assert!(ab.is_annular());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn diagram_families_closed_at_degrees_four_and_five(
        kind in proptest::sample::select(DiagramKind::ALL.to_vec()),
        n in 4usize..=5,
        picks in proptest::collection::vec(any::<proptest::sample::Index>(), 2),
    ) {
        let members = match partition::enumerate(kind, n, 200_000) {
            Ok(m) => m,
            Err(_) => return Ok(()),
        };
        let (x, y) = (picks[0].get(&members), picks[1].get(&members));
        prop_assert!(kind.contains(&x.compose(y).unwrap()));
        prop_assert!(kind.contains(&x.star()));
    }

    #[test]
    fn transform_families_closed(
        kind in proptest::sample::select(TransformKind::ALL.to_vec()),
        n in 1usize..=6,
        picks in proptest::collection::vec(any::<proptest::sample::Index>(), 2),
    ) {
        let members = transform::enumerate(kind, n, 200_000).unwrap();
        let (x, y) = (picks[0].get(&members), picks[1].get(&members));
        prop_assert!(kind.contains(&x.compose(y).unwrap()));
        prop_assert!(kind.contains(&PartialTransformation::identity(n)));
    }

    #[test]
    fn subsemigroup_test_matches_pairwise_products(
        (f, n) in small_monoid(),
        bits in any::<u32>(),
    ) {
        let m = host(f, n);
        let x = m.set_from((0..m.len() as u32).filter(|i| bits >> i & 1 == 1));
        let closed = x.ones().all(|a| x.ones().all(|b| x.contains(m.mul(a as u32, b as u32) as usize)));
        prop_assert_eq!(is_subsemigroup(&m, &x), closed);
    }

    #[test]
    fn verify_maximal_matches_exhaustive_search(
        (f, n) in small_monoid(),
        pick in any::<proptest::sample::Index>(),
        drop in any::<proptest::sample::Index>(),
    ) {
        let m = host(f, n);
        let exhaustive = exhaustive_maximal(&m).unwrap();
        let maximal: Vec<Vec<u32>> = exhaustive.iter().map(sorted_members).collect();
        let chosen = pick.get(&exhaustive);
        prop_assert!(verify_maximal(&m, chosen).is_maximal());
        // Dropping one more element from a maximal subsemigroup never leaves a maximal one.
        let members = sorted_members(chosen);
        if !members.is_empty() {
            let mut smaller = chosen.clone();
            smaller.set(*drop.get(&members) as usize, false);
            let listed = maximal.contains(&sorted_members(&smaller));
            prop_assert_eq!(verify_maximal(&m, &smaller).is_maximal(), listed);
            prop_assert!(!listed);
        }
    }
}

#[test]
fn oracle_complements_lie_in_one_j_class() {
    for f in Family::all() {
        for n in 1..=4 {
            let Ok(m) = FiniteMonoid::enumerate(f, n, &Budget { max_elements: EXHAUSTIVE_CAP, ..Budget::default() }) else {
                break;
            };
            let g = m.greens();
            for set in exhaustive_maximal(&m).unwrap() {
                let js: BTreeSet<u32> = (0..m.len()).filter(|&i| !set.contains(i)).map(|i| g.j_of[i]).collect();
                assert_eq!(js.len(), 1, "{f}{n}");
            }
        }
    }
}

#[test]
fn units_form_the_unique_maximal_j_class() {
    for f in Family::all() {
        for n in 1..=4 {
            let Ok(m) = FiniteMonoid::enumerate(f, n, &Budget { max_elements: 5000, ..Budget::default() }) else {
                break;
            };
            let g = m.greens();
            let top = g.unit_class().expect("monoids have units");
            for j in 0..g.j_classes.len() as u32 {
                assert!(g.is_above(top, j), "{f}{n}: J-class {j} is not below the units");
            }
            let id = m.identity().unwrap();
            assert_eq!(g.j_of[id as usize], top);
        }
    }
}

#[test]
fn every_family_is_regular() {
    for f in Family::all() {
        for n in 1..=4 {
            let Ok(m) = FiniteMonoid::enumerate(f, n, &Budget { max_elements: 5000, ..Budget::default() }) else {
                break;
            };
            assert!(m.greens().j_classes.iter().all(|c| c.regular), "{f}{n} has a non-regular J-class");
        }
    }
}

#[test]
fn element_kinds_do_not_mix() {
    let t = Element::from(PartialTransformation::identity(2));
    let p = Element::from(Partition::identity(2));
    assert!(t.try_mul(&p).is_err());
}
