use serde::{Deserialize, Serialize};
use ultravote::filters::{
    enumerate_filters, enumerate_ultrafilters, grimeisen_sum, ordinal_product, principal, slice_parts, SumPart,
};

use crate::error::{read, CliError};
use crate::output::{Out, Verdict};
use crate::UltraCmd;

#[derive(Serialize)]
struct FilterEntry {
    kernel: Vec<usize>,
    ultrafilter: bool,
    sets: usize,
}

#[derive(Serialize)]
struct Enumeration {
    n: usize,
    count: usize,
    filters: Vec<FilterEntry>,
}

/// A principal ultrafilter on `0..ground`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointDoc {
    ground: usize,
    point: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PartDoc {
    members: Vec<usize>,
    point: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SumDoc {
    outer: PointDoc,
    parts: Vec<PartDoc>,
}

#[derive(Serialize)]
struct SumReport {
    ground: usize,
    point: usize,
}

#[derive(Serialize)]
struct ProductReport {
    ground: usize,
    product_point: usize,
    sum_point: usize,
    equal: bool,
}

pub fn run(cmd: UltraCmd, out: &Out) -> Result<Verdict, CliError> {
    match cmd {
        UltraCmd::Enumerate { n, filters } => {
            let entries: Vec<FilterEntry> = if filters {
                enumerate_filters(n)?
                    .iter()
                    .map(|f| FilterEntry {
                        kernel: ultravote::family::members(f.kernel()),
                        ultrafilter: f.is_ultrafilter(),
                        sets: f.family().len(),
                    })
                    .collect()
            } else {
                enumerate_ultrafilters(n)?
                    .iter()
                    .map(|u| FilterEntry { kernel: vec![u.point()], ultrafilter: true, sets: u.family().len() })
                    .collect()
            };
            let r = Enumeration { n, count: entries.len(), filters: entries };
            out.emit(&r, || {
                let kind = if filters { "filters" } else { "ultrafilters" };
                let mut s = format!("{} {kind} on {n} points\n", r.count);
                for e in &r.filters {
                    let tag = if e.ultrafilter && filters { " (ultra)" } else { "" };
                    s.push_str(&format!("  kernel {}{tag}, {} sets\n", super::members(&e.kernel), e.sets));
                }
                s
            });
            Ok(Verdict::Holds)
        }
        UltraCmd::Sum { file } => {
            let doc: SumDoc = serde_json::from_str(&read(&file)?).map_err(|e| CliError::Malformed(e.to_string()))?;
            let outer = principal(doc.outer.ground, doc.outer.point)?;
            let parts = doc
                .parts
                .into_iter()
                .map(|p| Ok(SumPart { ultrafilter: principal(p.members.len(), p.point)?, members: p.members }))
                .collect::<Result<Vec<_>, CliError>>()?;
            let ground = parts.iter().map(|p| p.members.len()).sum();
            let sum = grimeisen_sum(&outer, &parts, ground)?;
            let r = SumReport { ground, point: sum.point() };
            out.emit(&r, || format!("sum on {ground} points is the principal ultrafilter at {}\n", r.point));
            Ok(Verdict::Holds)
        }
        UltraCmd::Product { i_size, u_point, j_size, v_point } => {
            let u = principal(i_size, u_point)?;
            let v = principal(j_size, v_point)?;
            let product = ordinal_product(&u, &v)?;
            let sum = grimeisen_sum(&v, &slice_parts(&u, j_size), i_size * j_size)?;
            let r = ProductReport {
                ground: i_size * j_size,
                product_point: product.point(),
                sum_point: sum.point(),
                equal: product == sum,
            };
            out.emit(&r, || {
                format!(
                    "U x V on {} points: principal at {}; sum over slices: principal at {}; equal: {}\n",
                    r.ground,
                    r.product_point,
                    r.sum_point,
                    crate::output::yes_no(r.equal)
                )
            });
            Ok(Verdict::from_bool(r.equal))
        }
    }
}
