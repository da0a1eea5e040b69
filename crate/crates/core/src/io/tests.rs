use super::*;
use crate::arithmetic::{rep_numbers, RepNumberTable};
use crate::lie_data::GroupId;
use crate::spectrum::{enumerate_dominant, remainder_series};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fs;

#[test]
fn spectrum_csv_rows() {
    let so3 = GroupId::new("SO", 3).unwrap();
    let t = remainder_series(&so3, &[0.0, 2.0]).unwrap().to_table();
    assert_eq!(t.header, ["lambda", "count", "leading", "remainder"]);
    assert_eq!(t.rows[0], ["0", "1", "0", "1"]);
    assert_eq!(t.rows[1][..2], ["2", "10"]);
    assert!(t.rows[1][2].starts_with("3.7712"));
    assert!(t.rows[1][3].starts_with("6.2287"));
}

#[test]
fn csv_round_trip_is_bit_exact() {
    let g = GroupId::new("U", 2).unwrap();
    let grid: Vec<f64> = (1..40).map(|k| k as f64 * 1.37).collect();
    let series = remainder_series(&g, &grid).unwrap();
    let text = series.to_table().to_csv_string().unwrap();
    let back = Table::read_from(text.as_bytes()).unwrap();
    let rem = back.column_f64("remainder").unwrap();
    let lambda = back.column_f64("lambda").unwrap();
    for (row, (r, l)) in series.rows.iter().zip(rem.iter().zip(&lambda)) {
        assert_eq!(row.remainder.to_bits(), r.to_bits());
        assert_eq!(row.lambda.to_bits(), l.to_bits());
    }
    assert!(back.column_f64("nope").is_err());
}

#[test]
fn identity_rows() {
    let t = identity_table(&[IdentityRow { t: 4, lhs: BigInt::from(88), rhs: BigInt::from(88) }]);
    assert_eq!(t.to_csv_string().unwrap(), "t,lhs,rhs,equal\n4,88,88,true\n");
    let mut t = Table::new(&["a", "b"]);
    assert!(t.push(vec!["1".into()]).is_err());
}

#[test]
fn dump_round_trip() {
    let g = GroupId::new("Spin", 5).unwrap();
    let entries = enumerate_dominant(&g, &BigRational::from_integer(BigInt::from(6))).unwrap();
    let dump = SpectrumDump::new(&g, &entries);
    let json = dump.to_json().unwrap();
    assert!(json.contains("\"N\": 5"));
    assert!(json.contains("\"1/2\""));
    let back: SpectrumDump = serde_json::from_str(&json).unwrap();
    assert_eq!(back.entries().unwrap(), entries);
}

#[test]
fn cache_round_trip_and_versioning() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let table = rep_numbers(4, 100).unwrap();
    let key = (4u32, 100u64);
    assert!(cache.load::<_, RepNumberTable>("rep", &key).unwrap().is_none());
    let path = cache.store("rep", &key, &table).unwrap();
    let first = fs::read(&path).unwrap();
    assert_eq!(cache.load::<_, RepNumberTable>("rep", &key).unwrap(), Some(table.clone()));

    let bumped = Cache::new(dir.path()).with_version(FORMAT_VERSION + 1);
    assert!(bumped.load::<_, RepNumberTable>("rep", &key).unwrap().is_none());
    assert_ne!(bumped.path_for("rep", &key).unwrap(), path);

    // recomputing the same key writes the same bytes
    cache.store("rep", &key, &rep_numbers(4, 100).unwrap()).unwrap();
    assert_eq!(fs::read(&path).unwrap(), first);
}

#[test]
fn corrupt_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let key = (3u32, 20u64);
    let path = cache.store("rep", &key, &rep_numbers(3, 20).unwrap()).unwrap();
    let text = fs::read_to_string(&path).unwrap().replace("\\\"6\\\"", "\\\"7\\\"");
    fs::write(&path, text).unwrap();
    assert!(cache.load::<_, RepNumberTable>("rep", &key).unwrap().is_none());
    fs::write(&path, "not json").unwrap();
    assert!(cache.load::<_, RepNumberTable>("rep", &key).unwrap().is_none());

    let mut calls = 0;
    let v = cache
        .get_or_compute("rep", &key, || {
            calls += 1;
            rep_numbers(3, 20)
        })
        .unwrap();
    assert_eq!(calls, 1);
    assert_eq!(v, rep_numbers(3, 20).unwrap());
    let again: RepNumberTable = cache.get_or_compute("rep", &key, || unreachable!()).unwrap();
    assert_eq!(again, v);
}
