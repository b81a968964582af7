//! Property tests over randomly chosen corpus instances.

use proptest::prelude::*;

use torsade::corpus;
use torsade::gamma::{enumerate_cocycles, twisted_conjugate_equiv, Cocycle};
use torsade::group::{cyclic, enumerate_homs, HomConstraints};
use torsade::torsor::Torsor;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_count_between_cyclic_groups(n in 1usize..=12, m in 1usize..=12) {
        let homs = enumerate_homs(&cyclic(n), &cyclic(m), &HomConstraints::new());
        prop_assert_eq!(homs.len(), gcd(n, m));
    }

    #[test]
    fn cocycle_at_any_basepoint_is_twisted_conjugate(
        inst_idx in 0usize..16,
        cocycle_idx in 0usize..64,
        point in 0usize..8,
    ) {
        let insts = corpus::gamma_groups();
        let gg = &insts[inst_idx % insts.len()].gg;
        let cocycles = enumerate_cocycles(gg);
        let c = &cocycles[cocycle_idx % cocycles.len()];
        let t = Torsor::from_cocycle(c);
        let x = point % t.size();
        let cx = t.cocycle_at(x);
        prop_assert!(twisted_conjugate_equiv(c, &cx).is_some());
        // rebuilt torsor is isomorphic to the original
        let rebuilt = Torsor::from_cocycle(&cx);
        prop_assert!(rebuilt.is_isomorphic(&t).unwrap().is_some());
    }

    #[test]
    fn twisted_conjugacy_is_an_equivalence(
        inst_idx in 0usize..16,
        i in 0usize..64,
        j in 0usize..64,
        k in 0usize..64,
    ) {
        let insts = corpus::gamma_groups();
        let gg = &insts[inst_idx % insts.len()].gg;
        let cocycles = enumerate_cocycles(gg);
        let a = &cocycles[i % cocycles.len()];
        let b = &cocycles[j % cocycles.len()];
        let c = &cocycles[k % cocycles.len()];
        prop_assert!(twisted_conjugate_equiv(a, a).is_some());
        prop_assert_eq!(
            twisted_conjugate_equiv(a, b).is_some(),
            twisted_conjugate_equiv(b, a).is_some()
        );
        if twisted_conjugate_equiv(a, b).is_some() && twisted_conjugate_equiv(b, c).is_some() {
            prop_assert!(twisted_conjugate_equiv(a, c).is_some());
        }
    }

    #[test]
    fn restriction_refines_orbits(inst_idx in 0usize..16, cocycle_idx in 0usize..64) {
        let insts = corpus::gamma_groups();
        let gg = &insts[inst_idx % insts.len()].gg;
        let cocycles = enumerate_cocycles(gg);
        let c = &cocycles[cocycle_idx % cocycles.len()];
        let t = Torsor::from_cocycle(c).as_gamma_set();
        let coarse = t.orbits();
        let trivial = gg.gamma().generated_subgroup(&[]);
        let fine = t.restrict(&trivial).unwrap().orbits();
        for orbit in fine {
            prop_assert!(coarse.iter().any(|c| orbit.iter().all(|x| c.contains(x))));
        }
        prop_assert!(t.fixed_points().len() <= coarse.len());
    }

    #[test]
    fn composing_with_the_inverse_cocycle_is_trivial(
        inst_idx in 0usize..16,
        cocycle_idx in 0usize..64,
    ) {
        let insts = corpus::gamma_groups();
        let gg = &insts[inst_idx % insts.len()].gg;
        let cocycles = enumerate_cocycles(gg);
        let c = &cocycles[cocycle_idx % cocycles.len()];
        let prod = c.compose_with(&c.inverse_cocycle()).unwrap();
        prop_assert!(prod.is_trivial());
        // and the product with any inner-form cocycle is again a cocycle
        for d in enumerate_cocycles(&c.inner_form()).iter().take(4) {
            let composed = c.compose_with(d).unwrap();
            prop_assert!(Cocycle::new(composed.gg().clone(), composed.values().to_vec()).is_ok());
        }
    }
}
