//! Deterministic SVG 1.1 renderings of rank-2 fans and rank-3
//! cross-sections.

use crate::cones::Fan;
use crate::lattice::LatVec;

const W: f64 = 480.0;
const H: f64 = 480.0;
const CX: f64 = W / 2.0;
const CY: f64 = H / 2.0;
const R: f64 = 180.0;

fn fnv(label: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn color(label: &str) -> String {
    let h = fnv(label);
    let hue = (h % 360) as f64;
    format!("hsl({:.0}, 55%, 72%)", hue)
}

fn to_f(v: &LatVec) -> Vec<f64> {
    v.0.iter()
        .map(|x| i64::try_from(x).expect("plot coordinate fits in i64") as f64)
        .collect()
}

fn norm2(p: &[f64]) -> f64 {
    p.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Screen position of a direction vector (y axis flipped).
fn screen2(p: &[f64], scale: f64) -> (f64, f64) {
    (CX + p[0] * scale, CY - p[1] * scale)
}

fn header(out: &mut String) {
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    out.push_str(&format!(
        "<line x1=\"0\" y1=\"{CY}\" x2=\"{W}\" y2=\"{CY}\" stroke=\"#ddd\"/>\n\
         <line x1=\"{CX}\" y1=\"0\" x2=\"{CX}\" y2=\"{H}\" stroke=\"#ddd\"/>\n"
    ));
}

fn plot_rank2(fan: &Fan, labels: &[String]) -> String {
    let mut out = String::new();
    header(&mut out);
    for (ci, cone) in fan.maximal_cones().iter().enumerate() {
        let rays = cone.rays();
        if rays.len() != 2 {
            continue;
        }
        let a = to_f(&rays[0]);
        let b = to_f(&rays[1]);
        let ua: Vec<f64> = a.iter().map(|x| x / norm2(&a)).collect();
        let ub: Vec<f64> = b.iter().map(|x| x / norm2(&b)).collect();
        let mid: Vec<f64> = ua.iter().zip(&ub).map(|(x, y)| x + y).collect();
        let um: Vec<f64> = mid.iter().map(|x| x / norm2(&mid)).collect();
        let (x1, y1) = screen2(&ua, R);
        let (xm, ym) = screen2(&um, R);
        let (x2, y2) = screen2(&ub, R);
        let fill = color(labels.get(ci).map(String::as_str).unwrap_or("cone"));
        out.push_str(&format!(
            "<polygon points=\"{CX:.2},{CY:.2} {x1:.2},{y1:.2} {xm:.2},{ym:.2} \
             {x2:.2},{y2:.2}\" fill=\"{fill}\" stroke=\"none\"/>\n"
        ));
    }
    for ray in fan.rays() {
        let p = to_f(&ray);
        let u: Vec<f64> = p.iter().map(|x| x / norm2(&p)).collect();
        let (x, y) = screen2(&u, R);
        let (lx, ly) = screen2(&u, R + 18.0);
        out.push_str(&format!(
            "<line x1=\"{CX:.2}\" y1=\"{CY:.2}\" x2=\"{x:.2}\" y2=\"{y:.2}\" \
             stroke=\"#333\" stroke-width=\"1.5\"/>\n"
        ));
        out.push_str(&format!(
            "<text x=\"{lx:.2}\" y=\"{ly:.2}\" font-size=\"11\" \
             text-anchor=\"middle\">({})</text>\n",
            ray.0
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn plot_rank3(fan: &Fan, labels: &[String], section: &LatVec) -> Result<String, String> {
    let w = to_f(section);
    let wn2: f64 = w.iter().map(|x| x * x).sum();
    if wn2 == 0.0 {
        return Err("plot: zero section vector".into());
    }
    // orthonormal basis of the section plane
    let seed = if w[0].abs() < 0.9 * norm2(&w) {
        vec![1.0, 0.0, 0.0]
    } else {
        vec![0.0, 1.0, 0.0]
    };
    let d = seed.iter().zip(&w).map(|(s, wi)| s * wi).sum::<f64>() / wn2;
    let mut b1: Vec<f64> = seed.iter().zip(&w).map(|(s, wi)| s - d * wi).collect();
    let n1 = norm2(&b1);
    b1.iter_mut().for_each(|x| *x /= n1);
    let mut b2 = vec![
        w[1] * b1[2] - w[2] * b1[1],
        w[2] * b1[0] - w[0] * b1[2],
        w[0] * b1[1] - w[1] * b1[0],
    ];
    let n2 = norm2(&b2);
    b2.iter_mut().for_each(|x| *x /= n2);

    let project = |r: &LatVec| -> Result<(f64, f64), String> {
        let p = to_f(r);
        let t: f64 = p.iter().zip(&w).map(|(a, b)| a * b).sum();
        if t <= 0.0 {
            return Err(format!("plot: ray {:?} misses the section plane", r));
        }
        let q: Vec<f64> = p.iter().map(|x| x / t).collect();
        let u: f64 = q.iter().zip(&b1).map(|(a, b)| a * b).sum();
        let v: f64 = q.iter().zip(&b2).map(|(a, b)| a * b).sum();
        Ok((u, v))
    };

    let mut pts = Vec::new();
    for r in fan.rays() {
        pts.push(project(&r)?);
    }
    let max_abs = pts
        .iter()
        .flat_map(|(u, v)| [u.abs(), v.abs()])
        .fold(1e-9, f64::max);
    let scale = R / max_abs;

    let mut out = String::new();
    header(&mut out);
    for (ci, cone) in fan.maximal_cones().iter().enumerate() {
        let mut poly: Vec<(f64, f64)> = cone
            .rays()
            .iter()
            .map(&project)
            .collect::<Result<_, String>>()?;
        let cx = poly.iter().map(|p| p.0).sum::<f64>() / poly.len() as f64;
        let cy = poly.iter().map(|p| p.1).sum::<f64>() / poly.len() as f64;
        poly.sort_by(|a, b| {
            let ta = (a.1 - cy).atan2(a.0 - cx);
            let tb = (b.1 - cy).atan2(b.0 - cx);
            ta.partial_cmp(&tb).unwrap()
        });
        let fill = color(labels.get(ci).map(String::as_str).unwrap_or("cone"));
        let points = poly
            .iter()
            .map(|(u, v)| format!("{:.2},{:.2}", CX + u * scale, CY - v * scale))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!(
            "<polygon points=\"{points}\" fill=\"{fill}\" stroke=\"#333\" \
             stroke-width=\"0.5\"/>\n"
        ));
    }
    for (r, (u, v)) in fan.rays().iter().zip(&pts) {
        let (x, y) = (CX + u * scale, CY - v * scale);
        out.push_str(&format!(
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"#333\"/>\n\
             <text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"11\" \
             text-anchor=\"middle\">({})</text>\n",
            y - 8.0,
            r.0.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Renders the fan; `labels` (one per maximal cone, canonical order)
/// seed the fill colors so equal payloads share a color.
pub fn plot_fan(
    fan: &Fan,
    labels: &[String],
    section: Option<&LatVec>,
) -> Result<String, String> {
    match fan.ambient_rank() {
        2 => Ok(plot_rank2(fan, labels)),
        3 => {
            let s = section.ok_or("plot: rank-3 fans need a 'section' vector")?;
            plot_rank3(fan, labels, s)
        }
        r => Err(format!("plot: rank {} not supported (2 or 3 only)", r)),
    }
}
