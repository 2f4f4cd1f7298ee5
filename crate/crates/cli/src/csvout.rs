//! CSV emitters (RFC-4180-style: CRLF-free simple numeric tables).

use num_complex::Complex64;

use numrange::range::{ConvexRegion, SupportProfile};

/// Support samples and boundary vertices side by side: rows carry
/// `theta,h` while samples last and `vertex_re,vertex_im` while vertices
/// last; exhausted columns are left empty.
pub fn range_csv(profile: &SupportProfile, region: &ConvexRegion) -> String {
    let mut out = String::from("theta,h,vertex_re,vertex_im\n");
    let rows = profile.m.max(region.vertices.len());
    for i in 0..rows {
        let (theta, h) = if i < profile.m {
            (
                format!("{}", profile.angle(i)),
                format!("{}", profile.values[i]),
            )
        } else {
            (String::new(), String::new())
        };
        let (vr, vi) = if i < region.vertices.len() {
            let v = region.vertices[i];
            (format!("{}", v.re), format!("{}", v.im))
        } else {
            (String::new(), String::new())
        };
        out.push_str(&format!("{theta},{h},{vr},{vi}\n"));
    }
    out
}

/// Inside lattice points, one per row.
pub fn lattice_csv(points: &[Complex64]) -> String {
    let mut out = String::from("re,im\n");
    for p in points {
        out.push_str(&format!("{},{}\n", p.re, p.im));
    }
    out
}
