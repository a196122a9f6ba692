use crate::basis::StructureConstants;
use crate::tensor::tuple::{self, Key};
use crate::tensor::{AltTensor, SymTensor};

/// Symmetric invariant of order `m` obtained by contracting all but one
/// index of `Omega^(2m-1)` in pairs with `f`; `absent` for orders beyond the rank.
#[derive(Clone, Debug)]
pub struct TTensor {
    pub n: usize,
    pub m: usize,
    pub body: SymTensor,
    pub absent: bool,
}

fn merge(mut v: Vec<(Key, f64)>) -> Vec<(Key, f64)> {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(Key, f64)> = Vec::with_capacity(v.len());
    for (k, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 += x,
            _ => out.push((k, x)),
        }
    }
    out.retain(|e| e.1 != 0.0);
    out
}

/// Contracts pairs of `omega` with `f` one at a time.
///
/// After `s` steps a state `(K; Y)` holds the sum over all orderings of the
/// multiset `K` of the partially contracted tensor with remaining
/// antisymmetric slots `Y`, so orderings never have to be enumerated.
pub fn build_t(sc: &StructureConstants, omega: &AltTensor) -> SymTensor {
    let rank = omega.rank();
    let m = rank.div_ceil(2);
    let r = omega.dim();
    let (keys, vals) = omega.raw_parts();
    let mut states: Vec<(Key, f64)> = keys.iter().copied().zip(vals.iter().copied()).collect();
    let mut buf = vec![0usize; rank];
    for s in 0..m - 1 {
        let y_len = rank - 2 * s;
        let mut next = Vec::with_capacity(states.len() * 4);
        let mut out = Vec::with_capacity(rank);
        for &(key, w) in &states {
            tuple::unpack_into(key, &mut buf[..s + y_len]);
            let (ks, ys) = buf[..s + y_len].split_at(s);
            for p in 0..y_len {
                for q in p + 1..y_len {
                    let row = sc.f_row(ys[p], ys[q]);
                    if row.is_empty() {
                        continue;
                    }
                    // moving the pair to the front; both orientations of (i,j)
                    let sign = if (p + q - 1) % 2 == 0 { 2.0 } else { -2.0 };
                    for &(k, fv) in row {
                        out.clear();
                        let at = ks.partition_point(|&x| x <= k);
                        out.extend_from_slice(&ks[..at]);
                        out.push(k);
                        out.extend_from_slice(&ks[at..]);
                        out.extend(
                            ys.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != p && c != q)
                                .map(|(_, &y)| y),
                        );
                        next.push((tuple::pack(&out), sign * fv * w));
                    }
                }
            }
        }
        states = merge(next);
    }
    let mut acc = Vec::with_capacity(states.len());
    for &(key, w) in &states {
        tuple::unpack_into(key, &mut buf[..m]);
        acc.push((tuple::sym_key(&buf[..m]), w));
    }
    let acc = merge(acc);
    let pairs = acc
        .into_iter()
        .map(|(key, w)| {
            let idx = tuple::unpack(key, m);
            (key, w / tuple::multiplicity(&idx))
        })
        .collect();
    SymTensor::from_key_pairs(m, r, pairs)
}

/// Direct evaluation at a raw tuple, without symmetrization: the last slot
/// stays on `omega`, every other slot is paired through `f`.
pub fn t_component_unsymmetrized(sc: &StructureConstants, omega: &AltTensor, raw: &[usize]) -> f64 {
    let m = raw.len();
    let mut idx = vec![0usize; 2 * m - 1];
    idx[2 * m - 2] = raw[m - 1];
    fn rec(sc: &StructureConstants, omega: &AltTensor, raw: &[usize], s: usize, idx: &mut [usize], coef: f64) -> f64 {
        if s + 1 == raw.len() {
            return coef * omega.get(idx);
        }
        sc.f_support(raw[s])
            .iter()
            .map(|&(i, j, fv)| {
                idx[2 * s] = i;
                idx[2 * s + 1] = j;
                rec(sc, omega, raw, s + 1, idx, coef * fv)
            })
            .sum()
    }
    2f64.powi(m as i32 - 1) * rec(sc, omega, raw, 0, &mut idx, 1.0)
}
