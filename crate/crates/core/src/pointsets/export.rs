use serde::Serialize;

use super::PointSet;
use crate::scalar::{Interval, RealScalar};
use crate::Result;

/// One exported point.
#[derive(Debug, Clone, Serialize)]
pub struct PointRecord {
    pub index: usize,
    pub face: Vec<usize>,
    /// Canonical exact strings, when the coordinates are exact.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<String>>,
    /// Midpoint decimals with `digits` significant digits.
    pub decimal: Vec<String>,
    /// Outward enclosures `[lo, hi]`, for interval coordinates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enclosure: Option<Vec<String>>,
    /// Cartesian position in the equilateral triangle (0,0), (1,0),
    /// (1/2, √3/2); only for d = 2.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xy: Option<[String; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointSetReport {
    pub degree: u32,
    pub dim: usize,
    pub count: usize,
    pub exact: bool,
    pub precision_bits: u32,
    pub digits: usize,
    pub points: Vec<PointRecord>,
}

fn bits_for(digits: usize) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 24
}

fn xy<S: RealScalar>(coords: &[S], prec: u32) -> (Interval, Interval) {
    let c: Vec<Interval> = coords.iter().map(|x| x.to_interval(prec)).collect();
    let half = Interval::from_f64(0.5, prec);
    let s3 = Interval::from_int_prec(3, prec).sqrt().expect("positive");
    let x = c[1].clone() + c[2].clone() * half.clone();
    let y = c[2].clone() * s3 * half;
    (x, y)
}

impl<S: RealScalar> PointSet<S> {
    pub fn report(&self, digits: usize, precision_bits: u32) -> PointSetReport {
        let prec = precision_bits.max(bits_for(digits));
        let exact = self.points.first().is_some_and(|p| p.coords[0].exact_string().is_some());
        let points = self
            .points
            .iter()
            .zip(&self.face_tags)
            .enumerate()
            .map(|(index, (p, tag))| {
                let ivs: Vec<Interval> = p.coords.iter().map(|c| c.to_interval(prec)).collect();
                PointRecord {
                    index,
                    face: tag.clone(),
                    exact: if exact { p.coords.iter().map(RealScalar::exact_string).collect() } else { None },
                    decimal: ivs.iter().map(|iv| iv.render_mid(digits)).collect(),
                    enclosure: if exact { None } else { Some(ivs.iter().map(Interval::render_decimal).collect()) },
                    xy: (self.dim == 2).then(|| {
                        let (x, y) = xy(&p.coords, prec);
                        [x.render_mid(digits), y.render_mid(digits)]
                    }),
                }
            })
            .collect();
        PointSetReport {
            degree: self.degree,
            dim: self.dim,
            count: self.points.len(),
            exact,
            precision_bits: if exact { prec } else { precision_bits },
            digits,
            points,
        }
    }
}

pub fn to_json_value<S: RealScalar>(set: &PointSet<S>, digits: usize, precision_bits: u32) -> serde_json::Value {
    serde_json::to_value(set.report(digits, precision_bits)).expect("report serializes")
}

/// CSV with columns index, face, l1 … l_{d+1} (and x, y for d = 2).
pub fn to_csv<S: RealScalar>(set: &PointSet<S>, digits: usize, precision_bits: u32) -> Result<String> {
    let report = set.report(digits, precision_bits);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["index".to_string(), "face".to_string()];
    header.extend((1..=set.nvars()).map(|i| format!("l{i}")));
    if set.dim == 2 {
        header.push("x".into());
        header.push("y".into());
    }
    let csv_err = |e: csv::Error| crate::Error::Invalid(format!("csv: {e}"));
    w.write_record(&header).map_err(csv_err)?;
    for rec in report.points {
        let mut row = vec![rec.index.to_string(), rec.face.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")];
        row.extend(rec.decimal);
        if let Some([x, y]) = rec.xy {
            row.push(x);
            row.push(y);
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Invalid(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use crate::pointsets::fekete_candidate_exact;

    #[test]
    fn json_has_exact_strings_and_projection() {
        let p = fekete_candidate_exact(3, 2).unwrap();
        let v = super::to_json_value(&p, 17, 64);
        assert_eq!(v["count"], 10);
        assert_eq!(v["points"][0]["exact"][0], "1");
        assert!(v["points"][9]["xy"].is_array());
    }

    #[test]
    fn csv_rows() {
        let p = fekete_candidate_exact(4, 2).unwrap();
        let s = super::to_csv(&p, 17, 64).unwrap();
        assert_eq!(s.lines().count(), 16);
        assert!(s.starts_with("index,face,l1,l2,l3,x,y"));
    }
}
