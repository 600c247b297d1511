#![allow(dead_code)]

pub mod props;

use rankcrit::Polynomial;
use rankcrit::polyring::Integers;
use rug::Integer;

/// Printed rows of `a_n(t)`, n = 0..9.
pub const A_ROWS: [&str; 10] = [
    "1",
    "-3t^2",
    "9t^4+2t",
    "-27t^6-18t^3-2",
    "81t^8+108t^5+36t^2",
    "-243t^10-540t^7-360t^4+152t",
    "729t^12+2430t^9+2700t^6-16440t^3-152",
    "-2187t^14+10206t^11-17010t^8+1311840t^5+24240t^2",
    "6561t^16+40824t^13+95256t^10-99234720t^7-2974800t^4+6848t",
    "-19683t^18-157464t^15-489888t^12+7449816240t^9+359465040t^6-578304t^3-6848",
];

/// Printed rows of `x_n(t)`, n = 0..9.
pub const X_ROWS: [&str; 10] = [
    "1",
    "0",
    "-t",
    "2",
    "-33t^2",
    "76t",
    "-339t^3",
    "4314t^2",
    "-72687t^4-3424t",
    "228168t^3+6848",
];

/// Printed rows of `f_n(t)`, n = 0..9; `...` marks elided middle terms.
pub const F_ROWS: [&str; 10] = [
    "1",
    "2t+3",
    "-6t^2-18t-9",
    "12t^3+54t^2+108t+81",
    "60t^4+360t^3+1296t^2+2268t+1377",
    "-1512t^5-11340t^4-...-34992t^2-13122t+2187",
    "21816t^6+196344t^5+...+1027890t^2+433026t+80919",
    "-280368t^7-2943864t^6-...-46517490t^2-24074496t-5189751",
    "3319056t^8+39828672t^7+...+1016482608t^2+423420696t+82097793",
    "-32283360t^9-435825360t^8-...+2060573904t^2+4373050842t+1702205523",
];

/// The two printed cells that disagree with the recurrence, as
/// `(family, n, degree, printed, computed)`.
pub const KNOWN_MISPRINTS: [(char, usize, usize, i64, i64); 2] =
    [('a', 7, 11, 10206, -10206), ('x', 6, 0, 0, -152)];

/// `p | f_{3(p−1)/8}(0)` for the admissible primes below 460.
pub const EP_VERDICTS: [(u64, bool); 20] = [
    (17, false),
    (41, false),
    (73, true),
    (89, true),
    (97, false),
    (113, true),
    (137, false),
    (193, false),
    (233, true),
    (241, false),
    (257, false),
    (281, true),
    (313, false),
    (337, true),
    (353, true),
    (401, false),
    (409, false),
    (433, false),
    (449, false),
    (457, false),
];

/// A printed row: its visible `(degree, coefficient)` terms, and whether
/// middle terms were elided.
#[derive(Debug, Clone)]
pub struct Row {
    pub terms: Vec<(usize, Integer)>,
    pub elided: bool,
}

fn parse_terms(s: &str) -> Vec<(usize, Integer)> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() || s == "0" {
        return Vec::new();
    }
    let mut pieces = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if i > 0 && (c == '+' || c == '-') {
            pieces.push(&s[start..i]);
            start = i;
        }
    }
    pieces.push(&s[start..]);
    pieces
        .into_iter()
        .map(|p| {
            let (sign, body) = match p.as_bytes()[0] {
                b'-' => (-1, &p[1..]),
                b'+' => (1, &p[1..]),
                _ => (1, p),
            };
            let (coef, deg) = match body.find('t') {
                None => (body, 0),
                Some(i) => {
                    let deg = if body[i + 1..].is_empty() { 1 } else { body[i + 2..].parse().unwrap() };
                    (&body[..i], deg)
                }
            };
            let c = if coef.is_empty() { Integer::from(1) } else { coef.parse::<Integer>().unwrap() };
            (deg, c * sign)
        })
        .collect()
}

pub fn parse_row(s: &str) -> Row {
    match s.split_once("...") {
        None => Row { terms: parse_terms(s), elided: false },
        Some((head, tail)) => {
            let head = head.trim_end_matches(['+', '-']);
            let mut terms = parse_terms(head);
            terms.extend(parse_terms(tail));
            Row { terms, elided: true }
        }
    }
}

/// Cells where `computed` disagrees with a printed row, as
/// `(degree, printed, computed)`. Elided rows compare the visible terms
/// and the degree only.
pub fn row_mismatches(row: &Row, computed: &Polynomial<Integers>) -> Vec<(usize, Integer, Integer)> {
    let mut out = Vec::new();
    if row.elided {
        for (d, c) in &row.terms {
            if computed.coeff(*d) != *c {
                out.push((*d, c.clone(), computed.coeff(*d)));
            }
        }
        let top = row.terms.iter().map(|t| t.0).max().unwrap_or(0);
        if computed.degree() != Some(top) {
            out.push((top, Integer::new(), Integer::from(computed.degree().unwrap_or(0))));
        }
    } else {
        let deg = row.terms.iter().map(|t| t.0).max().unwrap_or(0).max(computed.degree().unwrap_or(0));
        for d in 0..=deg {
            let printed = row.terms.iter().find(|t| t.0 == d).map(|t| t.1.clone()).unwrap_or_default();
            if computed.coeff(d) != printed {
                out.push((d, printed, computed.coeff(d)));
            }
        }
    }
    out
}
