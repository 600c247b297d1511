mod common;

use common::{parse_row, row_mismatches, A_ROWS, EP_VERDICTS, F_ROWS, KNOWN_MISPRINTS, X_ROWS};
use rankcrit::polyring::Integers;
use rankcrit::recurrences::generate;
use rankcrit::{scan, CurveFamily, Family};
use rug::Integer;

fn mismatches(family: Family, rows: &[&str]) -> Vec<(usize, usize, Integer, Integer)> {
    let mut out = Vec::new();
    for (n, row) in rows.iter().enumerate() {
        let computed = generate(family, n as u64, &Integers).unwrap();
        for (d, printed, got) in row_mismatches(&parse_row(row), &computed) {
            out.push((n, d, printed, got));
        }
    }
    out
}

fn expected_misprints(symbol: char) -> Vec<(usize, usize, Integer, Integer)> {
    KNOWN_MISPRINTS
        .iter()
        .filter(|m| m.0 == symbol)
        .map(|m| (m.1, m.2, Integer::from(m.3), Integer::from(m.4)))
        .collect()
}

#[test]
fn parser_roundtrip() {
    let r = parse_row("-1512t^5-11340t^4-...-34992t^2-13122t+2187");
    assert!(r.elided);
    assert_eq!(r.terms.len(), 5);
    assert_eq!(r.terms[2], (2, Integer::from(-34992)));
    let r = parse_row("-t");
    assert_eq!(r.terms, vec![(1, Integer::from(-1))]);
    assert!(parse_row("0").terms.is_empty());
}

#[test]
fn f_rows_match() {
    assert!(mismatches(Family::F, &F_ROWS).is_empty());
}

#[test]
fn a_rows_match_except_known_misprint() {
    assert_eq!(mismatches(Family::A, &A_ROWS), expected_misprints('a'));
}

#[test]
fn x_rows_match_except_known_misprint() {
    assert_eq!(mismatches(Family::X, &X_ROWS), expected_misprints('x'));
}

#[test]
fn elided_f_coefficients() {
    // the middle terms hidden by the printed rows
    let f7 = generate(Family::F, 7, &Integers).unwrap();
    assert_eq!(f7.coeff(5), Integer::from(-13273632));
    assert_eq!(f7.coeff(4), Integer::from(-33315300));
    assert_eq!(f7.coeff(3), Integer::from(-50473044));
    let f9 = generate(Family::F, 9, &Integers).unwrap();
    assert_eq!(f9.coeff(3), Integer::from(-7122096720i64));
}

#[test]
fn ep_verdicts_below_460() {
    let got: Vec<(u64, bool)> = scan(CurveFamily::Ep, 2, 460, 1).unwrap().iter().map(|v| (v.p, v.divisible)).collect();
    assert_eq!(got, EP_VERDICTS.to_vec());
}

#[test]
fn f_constant_terms_are_odd() {
    // mod 2 the f recurrence collapses to F_{n+1} ≡ F_n
    for n in 0..30 {
        let c = generate(Family::F, n, &Integers).unwrap().constant_term();
        assert!(c.is_odd(), "n = {n}");
    }
}
