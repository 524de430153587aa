//! Family descriptor text format (`key=value` lines).
//!
//! ```text
//! kind=custom_periodic
//! k=1
//! width=2
//! ends=1
//! row=0: 1@0 0@1 0@-1
//! row=1: 0@0 1@1 1@-1
//! ```
//!
//! `width`, `ends` and `row` lines are only allowed for `custom_periodic`.

use std::fmt::Write as _;

use super::{FamilyKind, FamilySpec, PeriodTable};
use crate::error::{Error, Result};

pub fn parse_family(text: &str) -> Result<FamilySpec> {
    let mut kind = None;
    let mut k = None;
    let mut width = None;
    let mut ends = None;
    let mut rows: Vec<(u32, Vec<(u32, i64)>)> = Vec::new();

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: &str| Error::input(format!("descriptor line {}: {m}", lineno + 1));
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err("expected key=value"))?;
        let value = value.trim();
        match key.trim() {
            "kind" => {
                kind = Some(match value {
                    "ray_blowup" => FamilyKind::RayBlowup,
                    "double_ray_blowup" => FamilyKind::DoubleRayBlowup,
                    "custom_periodic" => FamilyKind::CustomPeriodic,
                    other => return Err(err(&format!("unknown kind {other:?}"))),
                })
            }
            "k" => k = Some(value.parse::<u32>().map_err(|_| err("bad k"))?),
            "width" => width = Some(value.parse::<u32>().map_err(|_| err("bad width"))?),
            "ends" => ends = Some(value.parse::<u8>().map_err(|_| err("bad ends"))?),
            "row" => {
                let (slot, entries) = value
                    .split_once(':')
                    .ok_or_else(|| err("row needs `slot:`"))?;
                let slot = slot
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| err("bad row slot"))?;
                let mut row = Vec::new();
                for item in entries.split_whitespace() {
                    let (b, off) = item
                        .split_once('@')
                        .ok_or_else(|| err("row entry needs slot@offset"))?;
                    row.push((
                        b.parse().map_err(|_| err("bad slot in row entry"))?,
                        off.parse().map_err(|_| err("bad offset in row entry"))?,
                    ));
                }
                rows.push((slot, row));
            }
            other => return Err(err(&format!("unknown key {other:?}"))),
        }
    }

    let kind = kind.ok_or_else(|| Error::input("descriptor lacks kind="))?;
    let k = k.ok_or_else(|| Error::input("descriptor lacks k="))?;
    let period_table = if kind == FamilyKind::CustomPeriodic {
        let width = width.ok_or_else(|| Error::input("custom_periodic needs width="))?;
        let mut table = PeriodTable {
            width,
            ends: ends.unwrap_or(1),
            rows: vec![Vec::new(); width as usize],
        };
        for (slot, row) in rows {
            let target = table
                .rows
                .get_mut(slot as usize)
                .ok_or_else(|| Error::input(format!("row slot {slot} out of range")))?;
            target.extend(row);
        }
        table.validate()?;
        Some(table)
    } else {
        if width.is_some() || ends.is_some() || !rows.is_empty() {
            return Err(Error::input("width/ends/row only apply to custom_periodic"));
        }
        None
    };
    let spec = FamilySpec {
        kind,
        k,
        period_table,
    };
    if spec.k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    Ok(spec)
}

pub fn write_family(spec: &FamilySpec) -> String {
    let mut out = format!("kind={}\nk={}\n", spec.kind, spec.k);
    if let Some(t) = &spec.period_table {
        writeln!(out, "width={}\nends={}", t.width, t.ends).unwrap();
        for (a, row) in t.rows.iter().enumerate() {
            let items: Vec<String> = row.iter().map(|(b, off)| format!("{b}@{off}")).collect();
            writeln!(out, "row={a}: {}", items.join(" ")).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blowups_roundtrip() {
        for spec in super::super::catalog() {
            assert_eq!(parse_family(&write_family(&spec)).unwrap(), spec);
        }
    }

    #[test]
    fn ladder_roundtrip() {
        let spec = FamilySpec::custom(PeriodTable::ladder(), 1);
        let text = write_family(&spec);
        assert_eq!(text, "kind=custom_periodic\nk=1\nwidth=2\nends=1\nrow=0: 1@0 0@1 0@-1\nrow=1: 0@0 1@1 1@-1\n");
        assert_eq!(parse_family(&text).unwrap(), spec);
    }

    #[test]
    fn rejects_asymmetric_and_unknown() {
        let bad = "kind=custom_periodic\nk=1\nwidth=1\nrow=0: 0@1\n";
        assert!(parse_family(bad).is_err());
        assert!(parse_family("kind=ray_blowup\n").is_err());
        assert!(parse_family("kind=ray_blowup\nk=2\ncolor=red\n").is_err());
        assert!(parse_family("kind=ray_blowup\nk=2\nwidth=3\n").is_err());
        assert!(parse_family("kind=spiral\nk=2\n").is_err());
    }
}
