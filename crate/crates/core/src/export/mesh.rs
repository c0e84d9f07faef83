//! Charts to ℝ³ and triangle meshes of the grid.

use std::io::Write;

use crate::algebra::Vec31;
use crate::config::{MeshFormat, ProjectionModel};
use crate::domain::Field;
use crate::error::{Error, Result};
use crate::surface::GeometryKind;

/// The chart `Auto` stands for.
pub fn default_projection(kind: GeometryKind) -> ProjectionModel {
    match kind {
        GeometryKind::AffineE3 => ProjectionModel::Euclidean,
        GeometryKind::AffineL3 => ProjectionModel::Lorentzian,
        GeometryKind::AffineIsotropic => ProjectionModel::Isotropic,
        GeometryKind::QuadricH3 | GeometryKind::LwBryant => ProjectionModel::PoincareBall,
        GeometryKind::QuadricDeSitter => ProjectionModel::DeSitter,
        GeometryKind::QuadricLightcone => ProjectionModel::Lightcone,
    }
}

/// Projects one point; `None` where the chart's denominator is below `eps`.
pub fn project(x: Vec31, model: ProjectionModel, eps: f64) -> Option<[f64; 3]> {
    let div = |d: f64, p: [f64; 3]| (d.abs() > eps).then(|| p.map(|c| c / d));
    match model {
        ProjectionModel::Auto | ProjectionModel::Euclidean => Some([x.x1, x.x2, x.x3]),
        ProjectionModel::Lorentzian => Some([x.x1, x.x2, x.x0]),
        ProjectionModel::Isotropic => Some([x.x1, x.x2, 0.5 * (x.x0 - x.x3)]),
        ProjectionModel::PoincareBall => div(1.0 + x.x0, [x.x1, x.x2, x.x3]),
        ProjectionModel::DeSitter => div(1.0 + x.x3, [x.x0, x.x1, x.x2]),
        ProjectionModel::Lightcone => (x.x0 > eps).then(|| [x.x1 / x.x0, x.x2 / x.x0, x.x3 / x.x0]),
    }
}

/// Indexed triangle mesh. `nodes[k]` is the grid index of vertex `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub quality: Vec<f64>,
    pub nodes: Vec<usize>,
    pub faces: Vec<[u32; 3]>,
}

fn dist2(a: [f64; 3], b: [f64; 3]) -> f64 {
    (0..3).map(|k| (a[k] - b[k]).powi(2)).sum()
}

/// Triangulates the grid: each cell with four valid corners is split along
/// its shorter diagonal, a cell with three gives one triangle. Triangles are
/// counter-clockwise in the parameter plane.
pub fn build_mesh(points: &Field<[f64; 3]>, quality: &Field<f64>) -> Result<Mesh> {
    let grid = points.grid;
    let mut index = vec![u32::MAX; grid.len()];
    let mut mesh = Mesh {
        vertices: vec![],
        quality: vec![],
        nodes: vec![],
        faces: vec![],
    };
    for (k, p) in points.values.iter().enumerate() {
        if let Some(p) = p {
            index[k] = mesh.vertices.len() as u32;
            mesh.vertices.push(*p);
            mesh.quality.push(quality.values[k].unwrap_or(f64::NAN));
            mesh.nodes.push(k);
        }
    }
    if mesh.vertices.is_empty() {
        return Err(Error::Unmeshable);
    }
    for j in 0..grid.nv - 1 {
        for i in 0..grid.nu - 1 {
            let corners = [
                grid.index(i, j),
                grid.index(i + 1, j),
                grid.index(i + 1, j + 1),
                grid.index(i, j + 1),
            ];
            let valid = corners.map(|k| index[k] != u32::MAX);
            let id = corners.map(|k| index[k]);
            match valid.iter().filter(|v| **v).count() {
                4 => {
                    let p = corners.map(|k| points.values[k].unwrap());
                    if dist2(p[0], p[2]) <= dist2(p[1], p[3]) {
                        mesh.faces.push([id[0], id[1], id[2]]);
                        mesh.faces.push([id[0], id[2], id[3]]);
                    } else {
                        mesh.faces.push([id[0], id[1], id[3]]);
                        mesh.faces.push([id[1], id[2], id[3]]);
                    }
                }
                3 => {
                    let tri: Vec<u32> = (0..4).filter(|&c| valid[c]).map(|c| id[c]).collect();
                    mesh.faces.push([tri[0], tri[1], tri[2]]);
                }
                _ => {}
            }
        }
    }
    Ok(mesh)
}

pub fn write_obj(mesh: &Mesh, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(
        out,
        "# {} vertices, {} faces",
        mesh.vertices.len(),
        mesh.faces.len()
    )?;
    for v in &mesh.vertices {
        writeln!(out, "v {} {} {}", v[0], v[1], v[2])?;
    }
    for f in &mesh.faces {
        writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    Ok(())
}

/// Binary little-endian PLY with double `x y z quality` per vertex.
pub fn write_ply(mesh: &Mesh, out: &mut impl Write) -> std::io::Result<()> {
    write!(
        out,
        "ply\nformat binary_little_endian 1.0\nelement vertex {}\nproperty double x\nproperty double y\nproperty double z\nproperty double quality\nelement face {}\nproperty list uchar int vertex_indices\nend_header\n",
        mesh.vertices.len(),
        mesh.faces.len()
    )?;
    for (v, q) in mesh.vertices.iter().zip(&mesh.quality) {
        for c in v.iter().chain(std::iter::once(q)) {
            out.write_all(&c.to_le_bytes())?;
        }
    }
    for f in &mesh.faces {
        out.write_all(&[3u8])?;
        for &k in f {
            out.write_all(&(k as i32).to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn write_mesh(mesh: &Mesh, format: MeshFormat, out: &mut impl Write) -> std::io::Result<()> {
    match format {
        MeshFormat::Obj => write_obj(mesh, out),
        MeshFormat::Ply => write_ply(mesh, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::DomainGrid;

    fn plane(n: usize) -> Field<[f64; 3]> {
        let g = DomainGrid::centered_square(1.0, n).unwrap();
        Field::from_fn(g, |i, j| {
            let z = g.z(i, j);
            Some([z.re, z.im, 0.0])
        })
    }

    fn normal(m: &Mesh, f: [u32; 3]) -> [f64; 3] {
        let [a, b, c] = f.map(|k| m.vertices[k as usize]);
        let (u, v) = (
            [b[0] - a[0], b[1] - a[1], b[2] - a[2]],
            [c[0] - a[0], c[1] - a[1], c[2] - a[2]],
        );
        [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ]
    }

    #[test]
    fn horosphere_origin_projects_to_the_ball_centre() {
        assert_eq!(
            project(Vec31::E0, ProjectionModel::PoincareBall, 1e-6),
            Some([0.0, 0.0, 0.0])
        );
        assert_eq!(
            project(
                Vec31::new(-1.0, 0.0, 0.0, 0.0),
                ProjectionModel::PoincareBall,
                1e-6
            ),
            None
        );
        assert_eq!(
            project(
                Vec31::new(2.0, 1.0, 2.0, 2.0),
                ProjectionModel::Lightcone,
                1e-6
            ),
            Some([0.5, 1.0, 1.0])
        );
        assert_eq!(
            project(
                Vec31::new(0.0, 1.0, 2.0, 2.0),
                ProjectionModel::Lightcone,
                1e-6
            ),
            None
        );
        assert_eq!(
            project(
                Vec31::new(1.0, 2.0, 3.0, 4.0),
                ProjectionModel::Isotropic,
                0.0
            ),
            Some([2.0, 3.0, -1.5])
        );
        assert_eq!(
            project(
                Vec31::new(1.0, 2.0, 3.0, 1.0),
                ProjectionModel::DeSitter,
                0.0
            ),
            Some([0.5, 1.0, 1.5])
        );
    }

    #[test]
    fn plane_patch_is_consistently_wound() {
        let p = plane(6);
        let q = p.map(|_| Some(0.0));
        let m = build_mesh(&p, &q).unwrap();
        assert_eq!(m.vertices.len(), 36);
        assert_eq!(m.faces.len(), 50);
        for &f in &m.faces {
            let n = normal(&m, f);
            assert!(n[2] > 0.0 && n[0].abs() < 1e-15 && n[1].abs() < 1e-15);
        }
    }

    #[test]
    fn masked_nodes_drop_incident_faces() {
        let mut p = plane(5);
        p.set(2, 2, None);
        let m = build_mesh(&p, &p.map(|_| Some(1.0))).unwrap();
        assert_eq!(m.vertices.len(), 24);
        // the four cells around the hole lose one triangle each
        assert_eq!(m.faces.len(), 32 - 4);
        let hole = p.grid.index(2, 2);
        assert!(!m.nodes.contains(&hole));
        for &f in &m.faces {
            assert!(normal(&m, f)[2] > 0.0);
        }
    }

    #[test]
    fn single_node_mesh_and_empty_mesh() {
        let g = DomainGrid::centered_square(1.0, 3).unwrap();
        let mut p: Field<[f64; 3]> = Field::masked(g);
        assert!(matches!(
            build_mesh(&p, &p.map(|_| Some(0.0))),
            Err(Error::Unmeshable)
        ));
        p.set(1, 1, Some([0.0; 3]));
        let m = build_mesh(&p, &p.map(|_| Some(0.0))).unwrap();
        assert_eq!((m.vertices.len(), m.faces.len()), (1, 0));
    }

    #[test]
    fn obj_and_ply_layout() {
        let p = plane(2);
        let m = build_mesh(&p, &p.map(|_| Some(0.25))).unwrap();
        let mut obj = Vec::new();
        write_obj(&m, &mut obj).unwrap();
        let obj = String::from_utf8(obj).unwrap();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 4);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 2);
        assert!(obj.contains("v -1 -1 0\n"));

        let mut ply = Vec::new();
        write_ply(&m, &mut ply).unwrap();
        let end = b"end_header\n";
        let body = ply.windows(end.len()).position(|w| w == end).unwrap() + end.len();
        assert_eq!(ply.len() - body, 4 * 32 + 2 * 13);
        let q = f64::from_le_bytes(ply[body + 24..body + 32].try_into().unwrap());
        assert_eq!(q, 0.25);
    }
}
