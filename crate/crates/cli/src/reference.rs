//! Published generalised Dynkin indices of the fundamental representations.
//! Row `m - 2` holds order `m`; column `s - 1` holds the fundamental `s`.

const SU3: &[&[i64]] = &[&[1, 1], &[1, -1]];
const SU4: &[&[i64]] = &[&[1, 2, 1], &[1, 0, -1], &[1, -4, 1]];
const SU5: &[&[i64]] = &[&[1, 3, 3, 1], &[1, 1, -1, -1], &[1, -3, -3, 1], &[1, -11, 11, -1]];
const SU6: &[&[i64]] = &[
    &[1, 4, 6, 4, 1],
    &[1, 2, 0, -2, -1],
    &[1, -2, -6, -2, 1],
    &[1, -10, 0, 10, -1],
    &[1, -26, 66, -26, 1],
];

pub fn reference_table(n: usize) -> Option<&'static [&'static [i64]]> {
    match n {
        3 => Some(SU3),
        4 => Some(SU4),
        5 => Some(SU5),
        6 => Some(SU6),
        _ => None,
    }
}

pub fn reference_entry(n: usize, m: usize, s: usize) -> Option<i64> {
    let rows = reference_table(n)?;
    rows.get(m.checked_sub(2)?)?.get(s.checked_sub(1)?).copied()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_have_the_expected_shape_and_symmetry() {
        for n in 3..=6 {
            let rows = reference_table(n).unwrap();
            assert_eq!(rows.len(), n - 1);
            for (i, row) in rows.iter().enumerate() {
                let m = i + 2;
                assert_eq!(row.len(), n - 1);
                let sign = if m % 2 == 0 { 1 } else { -1 };
                for s in 1..n {
                    assert_eq!(row[s - 1], sign * row[n - s - 1], "su({n}) m={m} s={s}");
                }
            }
        }
        assert_eq!(reference_entry(6, 6, 3), Some(66));
        assert_eq!(reference_entry(6, 7, 3), None);
    }
}
