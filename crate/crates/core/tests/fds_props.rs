use growthlab_core::exactlin::{F2Matrix, F2Vector};
use growthlab_core::fds::{
    canonical_family, check_interleaving, dilate, growth_rate, FdsElement, FilteredSystem, GrowthMethod,
    InterleavingCandidate, TabulatedFds,
};
use proptest::prelude::*;

fn tabulated() -> impl Strategy<Value = TabulatedFds> {
    (prop::collection::btree_set(0u32..20, 1..6), prop::collection::vec(0usize..5, 6)).prop_flat_map(|(set, dims)| {
        let levels: Vec<f64> = set.iter().map(|&t| t as f64 / 2.0).collect();
        let dims = dims[..levels.len()].to_vec();
        let shapes: Vec<(usize, usize)> = dims.windows(2).map(|w| (w[1], w[0])).collect();
        let cells: usize = shapes.iter().map(|(r, c)| r * c).sum();
        prop::collection::vec(0u8..2, cells).prop_map(move |bits| {
            let mut off = 0;
            let maps = shapes
                .iter()
                .map(|&(r, c)| {
                    let m = F2Matrix::from_flat(r, c, &bits[off..off + r * c]).unwrap();
                    off += r * c;
                    m
                })
                .collect();
            TabulatedFds::new(levels.clone(), dims.clone(), maps).unwrap()
        })
    })
}

fn vector(bits: &[u8], len: usize) -> F2Vector {
    F2Vector::from_bits(&bits[..len])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn persistence_maps_compose(v in tabulated(), s in 0usize..12, a in 0usize..6, b in 0usize..6) {
        let (t, u) = (s + a, s + a + b);
        let direct = v.map_between(s, u).unwrap();
        let composed = v.map_between(t, u).unwrap().mul(&v.map_between(s, t).unwrap()).unwrap();
        prop_assert_eq!(direct, composed);
        prop_assert_eq!(v.map_between(s, s).unwrap(), F2Matrix::identity(v.dim(s).unwrap()));
    }

    #[test]
    fn spectral_number_of_sum_is_at_most_max(
        v in tabulated(),
        idx in 0usize..6,
        raw in prop::collection::vec(prop::collection::vec(0u8..2, 5), 1..5),
    ) {
        let i = idx % v.levels().len();
        let dim = v.breakpoint_dims()[i];
        let xs: Vec<FdsElement> = raw.iter().map(|b| FdsElement::new(i, vector(b, dim))).collect();
        let sum = xs[1..].iter().try_fold(xs[0].clone(), |acc, x| acc.add(x)).unwrap();
        let max = xs.iter().map(|x| v.spectral_number(x).unwrap()).fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(v.spectral_number(&sum).unwrap() <= max);
        prop_assert!(v.spectral_number(&sum).unwrap() <= v.levels()[i]);
    }

    #[test]
    fn dilation_samples_the_source(v in tabulated(), eta in 1usize..4) {
        let last = *v.levels().last().unwrap() as usize + 1;
        let w = dilate(&v, eta).unwrap();
        for n in 0..=last {
            prop_assert_eq!(w.dim(n).unwrap(), v.dim(eta * n).unwrap());
            prop_assert_eq!(w.step(n).unwrap(), v.map_between(eta * n, eta * (n + 1)).unwrap());
        }
        let dv = v.d_sequence(eta * last).unwrap();
        let dw = w.d_sequence(last).unwrap();
        for n in 0..=last {
            prop_assert_eq!(dw[n], dv[eta * n]);
        }
    }

    #[test]
    fn dilation_interleaves_canonically(v in tabulated(), eta in 1usize..4, pick in 0usize..1000) {
        let n_max = *v.levels().last().unwrap() as usize + 2;
        let w = dilate(&v, eta).unwrap();
        let cand = InterleavingCandidate {
            eta1: 1,
            eta2: eta,
            cutoff: 0,
            f: canonical_family(&v, n_max, |n| eta * n).unwrap(),
            g: canonical_family(&w, n_max, |n| n).unwrap(),
        };
        let report = check_interleaving(&v, &w, &cand).unwrap();
        prop_assert!(report.ok, "{:?}", report.first_violation);

        let slots: Vec<(usize, usize, usize)> = (1..=n_max)
            .flat_map(|n| {
                let (r, c) = cand.f.get(n).unwrap().shape();
                (0..r).flat_map(move |i| (0..c).map(move |j| (n, i, j)))
            })
            .collect();
        prop_assume!(!slots.is_empty());
        let (n, i, j) = slots[pick % slots.len()];
        let mut bad = cand.clone();
        let mut m = bad.f.get(n).unwrap().clone();
        m.set(i, j, !m.get(i, j));
        bad.f.set(n, Some(m));
        prop_assert!(!check_interleaving(&v, &w, &bad).unwrap().ok);
    }

    #[test]
    fn geometric_sequences_recover_their_base(base in 1.5f64..2.5, c in 1.0f64..10.0) {
        let d: Vec<u64> = (0..=40).map(|n| (c * base.powi(n)).floor() as u64).collect();
        let est = growth_rate(&d, (20, 40), GrowthMethod::Slope, false).unwrap();
        prop_assert!((est.rate - base.ln()).abs() < 1e-3);
        let est = growth_rate(&d, (20, 40), GrowthMethod::LastRatio, false).unwrap();
        prop_assert!((est.rate - base.ln()).abs() < 1e-3);
    }
}
