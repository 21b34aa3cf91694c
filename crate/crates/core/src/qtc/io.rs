//! Symbol sequence files.
//!
//! CSV: header `tau,<constraint letters>,warn`, one single-character symbol
//! per column and `|`-separated warning names. JSON: the full sequence
//! including thresholds, with each tuple's symbols as one string.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{QtcSequence, QtcSymbol, QtcTuple, Thresholds, Variant, Warnings};
use crate::error::{QtcError, Result};

pub fn write_sequence_csv<W: Write>(seq: &QtcSequence, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let csv_err = |e: csv::Error| QtcError::Io(e.into());
    let mut header = vec!["tau".to_string()];
    header.extend(seq.variant.constraints().iter().map(|c| c.letter().to_string()));
    header.push("warn".into());
    w.write_record(&header).map_err(csv_err)?;
    for t in &seq.tuples {
        let mut row = vec![t.tau.to_string()];
        row.extend(t.symbols.iter().map(|s| s.as_char().to_string()));
        row.push(t.warnings.names().join("|"));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads tuples written by [`write_sequence_csv`]; the variant is recovered
/// from the header.
pub fn read_sequence_csv<R: Read>(reader: R) -> Result<(Variant, Vec<QtcTuple>)> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| QtcError::Parse { line: 1, message: e.to_string() })?
        .clone();
    let cols: Vec<&str> = headers.iter().collect();
    let letters: String = match cols.as_slice() {
        ["tau", middle @ .., "warn"] => middle.concat(),
        _ => {
            return Err(QtcError::Parse { line: 1, message: "expected header tau,<letters>,warn".into() });
        }
    };
    let variant = Variant::ALL
        .into_iter()
        .find(|v| v.constraints().iter().map(|c| c.letter()).collect::<String>() == letters)
        .ok_or_else(|| QtcError::Parse { line: 1, message: format!("unknown constraint set '{letters}'") })?;

    let mut tuples = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| QtcError::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let parse_err = |message: String| QtcError::Parse { line, message };
        let tau = record[0].parse::<usize>().map_err(|e| parse_err(e.to_string()))?;
        let symbols = (1..=variant.arity())
            .map(|i| {
                let mut chars = record[i].chars();
                match (chars.next().and_then(QtcSymbol::from_char), chars.next()) {
                    (Some(s), None) => Ok(s),
                    _ => Err(parse_err(format!("invalid symbol '{}'", &record[i]))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let warnings = Warnings::from_names(record[variant.arity() + 1].split('|'))
            .map_err(|e| parse_err(e.to_string()))?;
        tuples.push(QtcTuple { tau, variant, symbols, warnings });
    }
    Ok((variant, tuples))
}

#[derive(Serialize, Deserialize)]
struct TupleRecord {
    tau: usize,
    symbols: String,
    #[serde(default)]
    warn: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct SequenceRecord {
    variant: Variant,
    thresholds: Thresholds,
    tuples: Vec<TupleRecord>,
}

pub fn write_sequence_json<W: Write>(seq: &QtcSequence, writer: W) -> Result<()> {
    let record = SequenceRecord {
        variant: seq.variant,
        thresholds: seq.thresholds,
        tuples: seq
            .tuples
            .iter()
            .map(|t| TupleRecord {
                tau: t.tau,
                symbols: t.symbol_string(),
                warn: t.warnings.names().into_iter().map(String::from).collect(),
            })
            .collect(),
    };
    serde_json::to_writer_pretty(writer, &record)?;
    Ok(())
}

pub fn read_sequence_json<R: Read>(reader: R) -> Result<QtcSequence> {
    let record: SequenceRecord = serde_json::from_reader(reader)?;
    let variant = record.variant;
    let tuples = record
        .tuples
        .into_iter()
        .map(|t| {
            let symbols = t
                .symbols
                .chars()
                .map(|c| QtcSymbol::from_char(c).ok_or_else(|| QtcError::InvalidArgument(format!("invalid symbol '{c}'"))))
                .collect::<Result<Vec<_>>>()?;
            if symbols.len() != variant.arity() {
                return Err(QtcError::InvalidArgument(format!(
                    "tuple '{}' does not match variant {variant}",
                    t.symbols
                )));
            }
            let warnings = Warnings::from_names(t.warn.iter().map(String::as_str))?;
            Ok(QtcTuple { tau: t.tau, variant, symbols, warnings })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QtcSequence { variant, thresholds: record.thresholds, tuples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn symbol() -> impl Strategy<Value = QtcSymbol> {
        prop_oneof![Just(QtcSymbol::Minus), Just(QtcSymbol::Zero), Just(QtcSymbol::Plus)]
    }

    fn sequence() -> impl Strategy<Value = QtcSequence> {
        (0..Variant::ALL.len(), 0usize..30, 0u8..8).prop_flat_map(|(vi, len, w)| {
            let variant = Variant::ALL[vi];
            proptest::collection::vec(proptest::collection::vec(symbol(), variant.arity()), len).prop_map(
                move |rows| QtcSequence {
                    variant,
                    thresholds: Thresholds::default(),
                    tuples: rows
                        .into_iter()
                        .enumerate()
                        .map(|(tau, symbols)| QtcTuple {
                            tau,
                            variant,
                            symbols,
                            warnings: Warnings::from_bits_truncate(w.wrapping_mul(tau as u8)),
                        })
                        .collect(),
                },
            )
        })
    }

    proptest! {
        #[test]
        fn csv_and_json_round_trip(seq in sequence()) {
            let mut buf = Vec::new();
            write_sequence_csv(&seq, &mut buf).unwrap();
            let (variant, tuples) = read_sequence_csv(buf.as_slice()).unwrap();
            prop_assert_eq!(variant, seq.variant);
            prop_assert_eq!(&tuples, &seq.tuples);

            let mut buf = Vec::new();
            write_sequence_json(&seq, &mut buf).unwrap();
            prop_assert_eq!(read_sequence_json(buf.as_slice()).unwrap(), seq);
        }
    }

    #[test]
    fn csv_layout() {
        let seq = QtcSequence {
            variant: Variant::ThreeD,
            thresholds: Thresholds::default(),
            tuples: vec![QtcTuple {
                tau: 1,
                variant: Variant::ThreeD,
                symbols: "-+0+-0+".chars().map(|c| QtcSymbol::from_char(c).unwrap()).collect(),
                warnings: Warnings::COINCIDENT,
            }],
        };
        let mut buf = Vec::new();
        write_sequence_csv(&seq, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "tau,A,B,C,F,G,H,I,warn\n1,-,+,0,+,-,0,+,coincident\n");
    }

    #[test]
    fn bad_symbol_is_a_parse_error() {
        let err = read_sequence_csv("tau,A,B,warn\n0,-,x,\n".as_bytes()).unwrap_err();
        assert!(matches!(err, QtcError::Parse { line: 2, .. }));
    }
}
