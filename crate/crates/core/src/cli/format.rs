//! Text file formats.
//!
//! * Matrix: header `B2 <rows> <cols>`, then `rows` lines of exactly `cols`
//!   characters from `{0,1}`. Every line ends in a single `\n`.
//! * Vector: one line of `{0,1}` characters.
//! * Permutation: one line with the images `image[0] .. image[n-1]` in
//!   decimal, separated by single spaces.
//! * Key parameters: one line `RM <r> <m> <t>`.

use crate::error::{Error, Result};
use crate::f2linalg::{BitMatrix, BitVec, Permutation};
use crate::rm::RmParams;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn bits_line(line: &str, expected: Option<usize>) -> Result<BitVec> {
    if let Some(n) = expected {
        if line.len() != n {
            return Err(parse_err(format!("expected {n} bits, found {}", line.len())));
        }
    }
    let bits = line
        .bytes()
        .map(|b| match b {
            b'0' => Ok(0),
            b'1' => Ok(1),
            other => Err(parse_err(format!("unexpected byte {:?}", other as char))),
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(BitVec::from_bits(&bits))
}

/// Splits on `\n`, requiring the text to end with exactly one newline.
fn lines(text: &str) -> Result<Vec<&str>> {
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| parse_err("missing final newline"))?;
    Ok(body.split('\n').collect())
}

pub fn write_matrix(m: &BitMatrix) -> String {
    let mut out = format!("B2 {} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        out.push_str(&m.row_vec(r).to_string());
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<BitMatrix> {
    let lines = lines(text)?;
    let header: Vec<&str> = lines[0].split(' ').collect();
    let [tag, rows, cols] = header.as_slice() else {
        return Err(parse_err(format!("bad header {:?}", lines[0])));
    };
    if *tag != "B2" {
        return Err(parse_err(format!("bad magic {tag:?}")));
    }
    let rows: usize = rows.parse().map_err(|_| parse_err(format!("bad row count {rows:?}")))?;
    let cols: usize = cols.parse().map_err(|_| parse_err(format!("bad column count {cols:?}")))?;
    if lines.len() != rows + 1 {
        return Err(parse_err(format!("expected {rows} rows, found {}", lines.len() - 1)));
    }
    let vecs = lines[1..]
        .iter()
        .map(|l| bits_line(l, Some(cols)))
        .collect::<Result<Vec<_>>>()?;
    BitMatrix::from_rows(cols, &vecs)
}

pub fn write_vector(v: &BitVec) -> String {
    format!("{v}\n")
}

pub fn parse_vector(text: &str) -> Result<BitVec> {
    let lines = lines(text)?;
    if lines.len() != 1 {
        return Err(parse_err("vector file must hold one line"));
    }
    bits_line(lines[0], None)
}

pub fn write_permutation(p: &Permutation) -> String {
    let parts: Vec<String> = p.image().iter().map(usize::to_string).collect();
    format!("{}\n", parts.join(" "))
}

pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let lines = lines(text)?;
    if lines.len() != 1 {
        return Err(parse_err("permutation file must hold one line"));
    }
    if lines[0].is_empty() {
        return Permutation::new(Vec::new());
    }
    let image = lines[0]
        .split(' ')
        .map(|t| t.parse::<usize>().map_err(|_| parse_err(format!("bad index {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Permutation::new(image)
}

pub fn write_params(p: &RmParams) -> String {
    format!("RM {} {} {}\n", p.r(), p.m(), p.t())
}

/// Returns the parameters and the stored error weight.
pub fn parse_params(text: &str) -> Result<(RmParams, usize)> {
    let lines = lines(text)?;
    let fields: Vec<&str> = lines[0].split(' ').collect();
    let ["RM", r, m, t] = fields.as_slice() else {
        return Err(parse_err(format!("bad parameter line {:?}", lines[0])));
    };
    let num = |s: &str| s.parse::<usize>().map_err(|_| parse_err(format!("bad number {s:?}")));
    Ok((RmParams::new(num(r)?, num(m)?)?, num(t)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2linalg::random_matrix;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matrix_layout() {
        let m = BitMatrix::from_bit_rows(&[[1, 0, 1], [0, 1, 1]]);
        assert_eq!(write_matrix(&m), "B2 2 3\n101\n011\n");
        assert_eq!(write_matrix(&BitMatrix::zeros(0, 4)), "B2 0 4\n");
    }

    #[test]
    fn matrix_rejects_malformed() {
        for bad in [
            "B2 1 3\n101",
            "B2 1 3\n10\n",
            "B2 1 3\n1012\n",
            "B2 1 3\n101 \n",
            "B3 1 3\n101\n",
            "B2 2 3\n101\n",
            "B2 1 3\n101\n\n",
            "B2  1 3\n101\n",
        ] {
            assert!(parse_matrix(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn vector_and_permutation_round_trip() {
        let v = BitVec::from_bits(&[1, 0, 0, 1]);
        assert_eq!(write_vector(&v), "1001\n");
        assert_eq!(parse_vector("1001\n").unwrap(), v);
        assert!(parse_vector("1001").is_err());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(write_permutation(&p), "2 0 1\n");
        assert_eq!(parse_permutation("2 0 1\n").unwrap(), p);
        assert!(parse_permutation("2 2 1\n").is_err());
    }

    #[test]
    fn params_round_trip() {
        let p = RmParams::new(2, 5).unwrap();
        assert_eq!(write_params(&p), "RM 2 5 3\n");
        assert_eq!(parse_params("RM 2 5 3\n").unwrap(), (p, 3));
        assert!(parse_params("RM 5 5 3\n").is_err());
    }

    proptest! {
        #[test]
        fn matrix_round_trip(rows in 0usize..6, cols in 0usize..90, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(rows, cols, &mut rng);
            let text = write_matrix(&m);
            prop_assert_eq!(parse_matrix(&text).unwrap(), m);
            prop_assert_eq!(write_matrix(&parse_matrix(&text).unwrap()), text);
        }
    }
}
