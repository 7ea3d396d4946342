use serde::{Deserialize, Serialize};

use super::{ExponentLedger, LogConnection};
use crate::curve::{CurveElement, CurveInstance, CurvePoint, Divisor, DivisorClass, Place};
use crate::error::{Error, Result};
use crate::exact::{format_q, parse_poly, parse_q, poly_text, Mat2, Poly};

/// A place with its multiplicity, as text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceMult {
    pub place: String,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentRecord {
    pub point: String,
    pub plus: String,
    pub minus: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRecord {
    pub exponents: Vec<ExponentRecord>,
    pub degree: i64,
    pub class_sum: String,
}

/// Text form of a connection: entries as `a|b`, polar divisor, ledger.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionRecord {
    pub entries: [[String; 2]; 2],
    pub polar: Vec<PlaceMult>,
    pub ledger: LedgerRecord,
}

fn place_text(p: &Place) -> String {
    match p {
        Place::Point(pt) => pt.to_string(),
        Place::Fiber(c) => format!("fiber[{}]", poly_text(&Poly::new(c.clone()))),
    }
}

fn parse_place(s: &str) -> Result<Place> {
    if let Some(inner) = s.strip_prefix("fiber[").and_then(|r| r.strip_suffix(']')) {
        return Ok(Place::fiber(&parse_poly(inner)?));
    }
    Ok(Place::Point(CurvePoint::parse(s)?))
}

impl LedgerRecord {
    pub fn from_ledger(l: &ExponentLedger) -> Self {
        LedgerRecord {
            exponents: l
                .exponents
                .iter()
                .map(|(p, (a, b))| ExponentRecord { point: p.to_string(), plus: format_q(a), minus: format_q(b) })
                .collect(),
            degree: l.degree,
            class_sum: l.class.sum.to_string(),
        }
    }

    pub fn to_ledger(&self) -> Result<ExponentLedger> {
        let mut exps = Vec::new();
        for e in &self.exponents {
            exps.push((CurvePoint::parse(&e.point)?, (parse_q(&e.plus)?, parse_q(&e.minus)?)));
        }
        let class = DivisorClass { degree: self.degree, sum: CurvePoint::parse(&self.class_sum)? };
        Ok(ExponentLedger::new(exps, class))
    }
}

impl ConnectionRecord {
    pub fn from_connection(c: &LogConnection) -> Self {
        let e = |i: usize, j: usize| c.a.get(i, j).text();
        ConnectionRecord {
            entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
            polar: c.polar.terms().map(|(p, m)| PlaceMult { place: place_text(p), mult: m }).collect(),
            ledger: LedgerRecord::from_ledger(&c.ledger),
        }
    }

    /// Rebuilds the connection; the stored polar divisor must match the recomputed one.
    pub fn to_connection(&self, inst: &CurveInstance) -> Result<LogConnection> {
        let curve = inst.curve();
        let p = |i: usize, j: usize| CurveElement::parse(&curve, &self.entries[i][j]);
        let a = Mat2::new(p(0, 0)?, p(0, 1)?, p(1, 0)?, p(1, 1)?);
        let conn = LogConnection::new(inst, a, self.ledger.to_ledger()?)?;
        let mut stored = Divisor::zero();
        for pm in &self.polar {
            stored.add_place(parse_place(&pm.place)?, pm.mult);
        }
        if stored != conn.polar {
            return Err(Error::Precondition(format!(
                "stored polar divisor {stored} differs from the entries' poles {}",
                conn.polar
            )));
        }
        Ok(conn)
    }
}
