use num_complex::Complex64;
use proptest::prelude::*;

use sun_casimir::casimir::ClosedForm;
use sun_casimir::linalg::{trace_product, CMatrix};
use sun_casimir::tensor::codec::{decode, encode, CanonicalTensor};
use sun_casimir::tensor::{antisymmetrize_full, norm_sq, symmetrize, tuple, AltTensor, DenseTensor, SymTensor};

fn matrix(size: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), size * size).prop_map(move |v| {
        let data = v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
        CMatrix::from_vec(size, size, data).unwrap()
    })
}

fn dense(rank: usize, dim: usize) -> impl Strategy<Value = DenseTensor> {
    prop::collection::vec(-1.0f64..1.0, dim.pow(rank as u32)).prop_map(move |v| {
        let mut it = v.into_iter();
        DenseTensor::from_fn(rank, dim, |_| it.next().unwrap())
    })
}

fn index_tuple(rank: usize, dim: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (
        prop::collection::vec(0..dim, rank),
        Just((0..rank).collect::<Vec<_>>()).prop_shuffle(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_product_is_cyclic(ms in prop::collection::vec(matrix(4), 4), shift in 0usize..4) {
        let base: Vec<&CMatrix> = ms.iter().collect();
        let mut rotated = base.clone();
        rotated.rotate_left(shift);
        let a = trace_product(&base).unwrap();
        let b = trace_product(&rotated).unwrap();
        prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1.0));
    }

    #[test]
    fn kron_trace_factorizes(a in matrix(3), b in matrix(2)) {
        let k = a.kron(&b);
        prop_assert_eq!(k.shape(), (6, 6));
        let want = a.trace().unwrap() * b.trace().unwrap();
        prop_assert!((k.trace().unwrap() - want).norm() < 1e-12);
    }

    #[test]
    fn commutator_is_antisymmetric(a in matrix(3), b in matrix(3)) {
        let ab = a.commutator(&b).unwrap();
        let ba = b.commutator(&a).unwrap();
        prop_assert!(ab.add(&ba).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn sym_lookup_ignores_order(t in dense(3, 4), (idx, perm) in index_tuple(3, 4)) {
        let s = symmetrize(&t);
        let permuted: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
        prop_assert_eq!(s.get(&idx), s.get(&permuted));
        prop_assert!(s.len() as f64 <= tuple::binomial(4 + 3 - 1, 3));
    }

    #[test]
    fn alt_lookup_carries_sign(t in dense(3, 4), (idx, perm) in index_tuple(3, 4)) {
        let a = antisymmetrize_full(&t);
        let mut permuted: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
        let got = a.get(&permuted);
        let mut sorted_perm = perm.clone();
        let sign = tuple::sort_with_parity(&mut sorted_perm) as f64;
        let distinct = { let mut s = idx.clone(); s.sort_unstable(); s.dedup(); s.len() == idx.len() };
        if distinct {
            prop_assert_eq!(got, sign * a.get(&idx));
        } else {
            prop_assert_eq!(got, 0.0);
        }
        prop_assert_eq!(tuple::sort_with_parity(&mut permuted) != 0, distinct);
        prop_assert!(a.len() as f64 <= tuple::binomial(4, 3));
    }

    #[test]
    fn projections_do_not_increase_norm(t in dense(3, 3)) {
        let total = norm_sq(&t);
        let s = symmetrize(&t);
        let a = antisymmetrize_full(&t);
        prop_assert!(norm_sq(&s) <= total + 1e-12);
        prop_assert!(norm_sq(&a) <= total + 1e-12);
        prop_assert!(s.max_abs() <= t.max_abs() + 1e-12);
        let again = symmetrize(&s);
        prop_assert!(again.max_abs_diff(&s) < 1e-14);
    }

    #[test]
    fn codec_round_trips(t in dense(3, 5), n in 2u16..8, alt in any::<bool>()) {
        let tensor = if alt {
            CanonicalTensor::Alt(antisymmetrize_full(&t))
        } else {
            CanonicalTensor::Sym(symmetrize(&t))
        };
        let (n_back, back) = decode(&encode(n, &tensor)).unwrap();
        prop_assert_eq!(n_back, n);
        prop_assert_eq!(back, tensor);
    }

    #[test]
    fn codec_rejects_truncation(t in dense(2, 4), cut in 1usize..16) {
        let bytes = encode(3, &CanonicalTensor::Sym(symmetrize(&t)));
        let keep = bytes.len().saturating_sub(cut);
        prop_assert!(decode(&bytes[..keep]).is_err());
    }

    #[test]
    fn fundamental_indices_flip_under_conjugation(n in 3usize..=9, m in 2usize..=5, s in 1usize..9) {
        prop_assume!(s < n && m <= n);
        if let (Some(a), Some(b)) = (ClosedForm::for_fundamental(m, s), ClosedForm::for_fundamental(m, n - s)) {
            let (a, b) = (a.evaluate(n), b.evaluate(n));
            if let (Ok(a), Ok(b)) = (a, b) {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                prop_assert!((a - sign * b).abs() < 1e-9 * a.abs().max(1.0), "n={} m={} s={}: {} {}", n, m, s, a, b);
            }
        }
    }
}

#[test]
fn empty_alt_tensor_from_repeated_entries() {
    let a = AltTensor::from_entries(3, 4, vec![(vec![1, 1, 2], 5.0)]);
    assert!(a.is_empty());
    let s = SymTensor::from_entries(2, 3, vec![(vec![2, 0], 1.5)]);
    assert_eq!(s.get(&[0, 2]), 1.5);
}
