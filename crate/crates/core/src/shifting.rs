//! Compression of independent-set families toward the `X` side: every
//! centre `y_i` is pushed onto its leaf `x_i` whenever the result is not
//! already present.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::graph::Graph;
use crate::set::{first_disjoint_pair, Family, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftReport {
    pub input_size: usize,
    pub output_size: usize,
    pub is_shifted: bool,
    pub intersecting: bool,
    pub l_intersecting: bool,
    /// Single-component compressions applied, including the final
    /// confirming round that changed nothing.
    pub passes: usize,
}

fn require_paths(g: &Graph) -> Result<()> {
    if g.is_p3_union() {
        Ok(())
    } else {
        Err(domain("shifting is only defined for the path union"))
    }
}

fn check_component(g: &Graph, i: usize) -> Result<()> {
    if (1..=g.n()).contains(&i) {
        Ok(())
    } else {
        Err(domain(format!("component index {i} outside 1..={}", g.n())))
    }
}

/// Replaces `y_i` by `x_i` (component `i` is 1-based); other sets are fixed.
pub fn phi_point(g: &Graph, a: VertexSet, i: usize) -> VertexSet {
    let y = g.y(i).0;
    if a.contains(y) {
        a.without(y).with(g.x(i).0)
    } else {
        a
    }
}

/// One compression step on component `i`:
/// `{phi_i(A) : A in F} ∪ {A : A, phi_i(A) in F}`.
pub fn shift_once(g: &Graph, f: &Family, i: usize) -> Result<Family> {
    require_paths(g)?;
    check_component(g, i)?;
    let images = f.iter().map(|&a| phi_point(g, a, i));
    let kept = f
        .iter()
        .copied()
        .filter(|&a| f.contains(phi_point(g, a, i)));
    Ok(Family::from_sets(images.chain(kept)))
}

/// Compresses until no component changes anything, visiting components
/// `1..=n` in ascending order each round. Input must be intersecting.
pub fn shift_full(g: &Graph, f: &Family) -> Result<(Family, ShiftReport)> {
    let order: Vec<usize> = (1..=g.n()).collect();
    shift_full_with_order(g, f, &order)
}

/// [`shift_full`] with an explicit component order for each round.
pub fn shift_full_with_order(
    g: &Graph,
    f: &Family,
    order: &[usize],
) -> Result<(Family, ShiftReport)> {
    require_paths(g)?;
    for &i in order {
        check_component(g, i)?;
    }
    if let Some((a, b)) = first_disjoint_pair(f) {
        return Err(Error::NotIntersecting { a, b });
    }
    let mut current = f.clone();
    let mut passes = 0;
    loop {
        let mut changed = false;
        for &i in order {
            let next = shift_once(g, &current, i)?;
            passes += 1;
            debug_assert_eq!(next.len(), current.len());
            if next != current {
                changed = true;
                current = next;
            }
        }
        if !changed {
            break;
        }
    }
    let report = ShiftReport {
        input_size: f.len(),
        output_size: current.len(),
        is_shifted: is_shifted(g, &current),
        intersecting: first_disjoint_pair(&current).is_none(),
        l_intersecting: is_l_intersecting(g, &current),
        passes,
    };
    Ok((current, report))
}

/// Every member with `y_i` has its `y_i -> x_i` image in the family.
pub fn is_shifted(g: &Graph, f: &Family) -> bool {
    let centres = g.centres();
    f.iter().all(|&a| {
        a.intersection(centres)
            .iter()
            .all(|y| f.contains(a.without(y).with(y - 2 * g.n())))
    })
}

/// Every two members (a member with itself included) share a leaf.
pub fn is_l_intersecting(g: &Graph, f: &Family) -> bool {
    let leaves = g.leaves();
    let m = f.members();
    m.iter()
        .enumerate()
        .all(|(i, &a)| m[i..].iter().all(|&b| a.intersection(b).intersects(leaves)))
}

/// A member made only of centres. Compressing it yields an all-leaf set
/// disjoint from it, so an intersecting shifted family cannot contain one.
pub fn all_centre_member(g: &Graph, f: &Family) -> Option<VertexSet> {
    let centres = g.centres();
    f.iter()
        .copied()
        .find(|a| !a.is_empty() && a.is_subset(centres))
}

/// Draws an intersecting subfamily of `pool` by scanning a random order and
/// keeping each set that meets everything kept so far, stopping at a random
/// target size. Empty sets are never kept.
pub fn random_intersecting_family<R: Rng + ?Sized>(pool: &Family, rng: &mut R) -> Family {
    let mut order: Vec<VertexSet> = pool.iter().copied().filter(|a| !a.is_empty()).collect();
    if order.is_empty() {
        return Family::new();
    }
    order.shuffle(rng);
    let target = rng.gen_range(1..=order.len());
    let mut chosen: Vec<VertexSet> = Vec::with_capacity(target);
    for a in order {
        if chosen.iter().all(|b| a.intersects(*b)) {
            chosen.push(a);
            if chosen.len() == target {
                break;
            }
        }
    }
    Family::from_sets(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::independent::{enumerate_independent, star};
    use crate::set::is_intersecting;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ids(g: &Graph, f: impl Fn(&Graph) -> Vec<usize>) -> VertexSet {
        f(g).into_iter().collect()
    }

    #[test]
    fn phi_examples() {
        let g = Graph::p3_union(2).unwrap();
        let y1x2 = ids(&g, |g| vec![g.y(1).0, g.x(2).0]);
        let x1x2 = ids(&g, |g| vec![g.x(1).0, g.x(2).0]);
        let x1z2 = ids(&g, |g| vec![g.x(1).0, g.z(2).0]);
        assert_eq!(phi_point(&g, y1x2, 1), x1x2);
        assert_eq!(phi_point(&g, y1x2, 2), y1x2);
        assert_eq!(phi_point(&g, x1z2, 1), x1z2);
    }

    #[test]
    fn shift_once_examples() {
        let g = Graph::p3_union(2).unwrap();
        let y1x2 = ids(&g, |g| vec![g.y(1).0, g.x(2).0]);
        let x1x2 = ids(&g, |g| vec![g.x(1).0, g.x(2).0]);
        let x1z2 = ids(&g, |g| vec![g.x(1).0, g.z(2).0]);
        let both = Family::from_sets([y1x2, x1x2]);
        assert_eq!(shift_once(&g, &both, 1).unwrap(), both);
        assert_eq!(
            shift_once(&g, &Family::from_sets([y1x2]), 1).unwrap(),
            Family::from_sets([x1x2])
        );
        let fixed = Family::from_sets([x1z2]);
        assert_eq!(shift_once(&g, &fixed, 1).unwrap(), fixed);
        assert!(shift_once(&g, &fixed, 3).is_err());
    }

    #[test]
    fn shift_full_examples() {
        let g = Graph::p3_union(2).unwrap();
        let y1y2 = ids(&g, |g| vec![g.y(1).0, g.y(2).0]);
        let x1x2 = ids(&g, |g| vec![g.x(1).0, g.x(2).0]);
        let (out, rep) = shift_full(&g, &Family::from_sets([y1y2])).unwrap();
        assert_eq!(out, Family::from_sets([x1x2]));
        assert!(rep.is_shifted && rep.l_intersecting);
        assert_eq!((rep.input_size, rep.output_size), (1, 1));

        let g4 = Graph::p3_union(4).unwrap();
        let st = star(&g4, g4.x(1), 2);
        let (out, rep) = shift_full(&g4, &st).unwrap();
        assert!(rep.is_shifted);
        assert_eq!(out.len(), st.len());
        let (again, _) = shift_full(&g4, &out).unwrap();
        assert_eq!(again, out);
    }

    #[test]
    fn rejects_non_intersecting() {
        let g = Graph::p3_union(2).unwrap();
        let f = Family::from_sets([
            VertexSet::singleton(g.x(1).0),
            VertexSet::singleton(g.z(1).0),
        ]);
        match shift_full(&g, &f) {
            Err(Error::NotIntersecting { a, b }) => assert!(!a.intersects(b)),
            other => panic!("expected rejection, got {other:?}"),
        }
        let claws = Graph::kclaw_union(2, 3).unwrap();
        assert!(shift_full(&claws, &Family::new()).is_err());
    }

    #[test]
    fn shiftedness_examples() {
        let g = Graph::p3_union(2).unwrap();
        let x1 = VertexSet::singleton(g.x(1).0);
        let y1 = VertexSet::singleton(g.y(1).0);
        assert!(is_shifted(&g, &Family::from_sets([x1])));
        assert!(!is_shifted(&g, &Family::from_sets([y1])));
        assert!(is_shifted(&g, &Family::from_sets([y1, x1])));
    }

    #[test]
    fn intersection_flavours() {
        let g = Graph::p3_union(2).unwrap();
        let s = |v: Vec<usize>| v.into_iter().collect::<VertexSet>();
        let f = Family::from_sets([s(vec![g.x(1).0, g.x(2).0]), s(vec![g.x(1).0, g.z(2).0])]);
        assert!(is_intersecting(&f) && is_l_intersecting(&g, &f));
        let f = Family::from_sets([s(vec![g.x(1).0]), s(vec![g.z(1).0])]);
        assert!(!is_intersecting(&f));
        let f = Family::from_sets([s(vec![g.y(1).0, g.x(2).0]), s(vec![g.y(1).0, g.z(2).0])]);
        assert!(is_intersecting(&f) && !is_l_intersecting(&g, &f));
    }

    #[test]
    fn compression_properties_on_random_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, r) in [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3)] {
            let g = Graph::p3_union(n).unwrap();
            let pool = enumerate_independent(&g, r);
            for _ in 0..200 {
                let f = random_intersecting_family(&pool, &mut rng);
                assert!(is_intersecting(&f));
                for i in 1..=n {
                    let once = shift_once(&g, &f, i).unwrap();
                    assert_eq!(once.len(), f.len());
                    assert!(is_intersecting(&once));
                }
                let (out, rep) = shift_full(&g, &f).unwrap();
                assert_eq!(rep.output_size, rep.input_size);
                assert!(rep.is_shifted && rep.intersecting && rep.l_intersecting);
                assert!(all_centre_member(&g, &out).is_none());
                assert_eq!(shift_full(&g, &out).unwrap().0, out);

                let mut order: Vec<usize> = (1..=n).collect();
                order.shuffle(&mut rng);
                let (other, rep2) = shift_full_with_order(&g, &f, &order).unwrap();
                assert_eq!(other.len(), out.len());
                assert!(rep2.is_shifted);
            }
        }
    }

    #[test]
    fn all_centre_member_contradiction() {
        // A shifted family holding an all-centre set also holds its all-leaf
        // image, and the two are disjoint.
        let g = Graph::p3_union(3).unwrap();
        let ys: VertexSet = [g.y(1).0, g.y(2).0].into_iter().collect();
        let f = Family::from_sets([ys]);
        let (out, _) = shift_full(&g, &f).unwrap();
        assert!(all_centre_member(&g, &out).is_none());
        let closed = Family::from_sets([
            ys,
            phi_point(&g, ys, 1),
            phi_point(&g, ys, 2),
            phi_point(&g, phi_point(&g, ys, 1), 2),
        ]);
        assert!(is_shifted(&g, &closed));
        assert!(all_centre_member(&g, &closed).is_some());
        assert!(!is_intersecting(&closed));
    }
}
