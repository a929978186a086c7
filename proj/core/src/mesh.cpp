#include "dsfem/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "dsfem/error.hpp"

namespace dsfem {

std::string_view to_string(MeshFamily f) {
  switch (f) {
    case MeshFamily::Squares: return "t1";
    case MeshFamily::Trapezoids: return "t2";
    case MeshFamily::Perturbed: return "t3";
  }
  return "?";
}

MeshFamily parse_family(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "t1") return MeshFamily::Squares;
  if (lower == "t2") return MeshFamily::Trapezoids;
  if (lower == "t3") return MeshFamily::Perturbed;
  throw Error(ErrorCode::InvalidArgument, "unknown mesh family '" + std::string(s) + "'");
}

namespace {

std::vector<Quad> build_quads(const std::vector<Point2>& v,
                              const std::vector<std::array<int, 4>>& cells) {
  std::vector<Quad> out;
  out.reserve(cells.size());
  for (const auto& c : cells) out.emplace_back(std::array<Point2, 4>{v[c[0]], v[c[1]], v[c[2]], v[c[3]]});
  return out;
}

// Strictly inside segment (a, b), relative to its length.
bool inside_segment(const Point2& p, const Point2& a, const Point2& b) {
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  const double t = dot(p - a, d) / len2;
  if (t <= 1e-9 || t >= 1.0 - 1e-9) return false;
  return std::abs(cross(d, p - a)) <= 1e-9 * len2;
}

}  // namespace

Mesh::Mesh(std::vector<Point2> vertices, std::vector<std::array<int, 4>> cells,
           std::optional<MeshFamily> family, int n)
    : vertices_(std::move(vertices)), cells_(std::move(cells)), family_(family), n_(n) {
  const int nv = num_vertices();
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (int k : cells_[c]) {
      if (k < 0 || k >= nv) {
        throw Error(ErrorCode::InvalidArgument,
                    "cell " + std::to_string(c) + " references vertex " + std::to_string(k));
      }
    }
  }
  quads_ = build_quads(vertices_, cells_);

  std::map<std::pair<int, int>, int> index;
  cell_edges_.resize(cells_.size());
  for (int c = 0; c < num_cells(); ++c) {
    for (int i = 0; i < 4; ++i) {
      const auto [s, e] = edge_vertices(i);
      const int a = cells_[c][s], b = cells_[c][e];
      if (a == b) throw Error(ErrorCode::Degenerate, "cell " + std::to_string(c) + " repeats a vertex");
      const auto key = std::minmax(a, b);
      auto it = index.find(key);
      if (it == index.end()) {
        MeshEdge me;
        me.vertices = {key.first, key.second};
        me.cells = {c, -1};
        me.local = {i, -1};
        index.emplace(key, num_edges());
        cell_edges_[c][i] = num_edges();
        edges_.push_back(me);
      } else {
        MeshEdge& me = edges_[it->second];
        if (me.cells[1] != -1) {
          throw Error(ErrorCode::NonConforming, "edge (" + std::to_string(key.first) + ", " +
                                                    std::to_string(key.second) +
                                                    ") is shared by more than two cells");
        }
        me.cells[1] = c;
        me.local[1] = i;
        cell_edges_[c][i] = it->second;
      }
    }
  }
  for (auto& me : edges_) me.boundary = me.cells[1] == -1;

  // A vertex inside a one-sided edge is a hanging node.
  for (const auto& me : edges_) {
    if (!me.boundary) continue;
    const Point2& a = vertices_[me.vertices[0]];
    const Point2& b = vertices_[me.vertices[1]];
    for (int k = 0; k < nv; ++k) {
      if (k == me.vertices[0] || k == me.vertices[1]) continue;
      if (inside_segment(vertices_[k], a, b)) {
        throw Error(ErrorCode::NonConforming,
                    "vertex " + std::to_string(k) + " hangs on edge (" +
                        std::to_string(me.vertices[0]) + ", " + std::to_string(me.vertices[1]) + ")");
      }
    }
  }
}

bool Mesh::edge_aligned(int c, int i) const {
  const auto [s, e] = edge_vertices(i);
  return cells_[c][s] < cells_[c][e];
}

double Mesh::h() const {
  double h = 0.0;
  for (const auto& q : quads_) h = std::max(h, q.h());
  return h;
}

Mesh generate_mesh(MeshFamily family, int n) {
  if (n < 1) throw Error(ErrorCode::BadSubdivision, "n must be positive");
  if (family != MeshFamily::Squares && n % 2 != 0) {
    throw Error(ErrorCode::BadSubdivision,
                std::string(to_string(family)) + " meshes need an even n (got " + std::to_string(n) + ")");
  }
  const double h = 1.0 / n;
  std::vector<Point2> v;
  v.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      Point2 p{i * h, j * h};
      const bool interior = i > 0 && i < n && j > 0 && j < n;
      if (family == MeshFamily::Trapezoids && j % 2 == 1 && j < n) {
        // Odd horizontal lines zig-zag so every vertical side is 0.75h or 1.25h.
        p.y += (i % 2 == 0 ? 0.25 : -0.25) * h;
      } else if (family == MeshFamily::Perturbed && interior) {
        const double s = (i + j) % 2 == 0 ? 1.0 : -1.0;
        p.x += s * 0.07 * h;
        p.y -= s * 0.05 * h;
      }
      if (i == 0) p.x = 0.0;
      if (i == n) p.x = 1.0;
      if (j == n) p.y = 1.0;
      v.push_back(p);
    }
  }
  std::vector<std::array<int, 4>> cells;
  cells.reserve(n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = j * (n + 1) + i;
      cells.push_back({a, a + 1, a + n + 2, a + n + 1});
    }
  }
  return Mesh(std::move(v), std::move(cells), family, n);
}

double mesh_quality(const Mesh& mesh) {
  double q = 1.0;
  for (int c = 0; c < mesh.num_cells(); ++c) q = std::min(q, mesh.quad(c).rho() / mesh.quad(c).h());
  return q;
}

bool no_parallel_opposite_edges(const Mesh& mesh) {
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const Quad& q = mesh.quad(c);
    if (q.parallel(0, 1) || q.parallel(2, 3)) return false;
  }
  return true;
}

namespace {

void append_double(std::string& out, double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  out.append(buf, res.ptr);
}

struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  int line = 0;

  // Next non-empty line with comments stripped; false at end of input.
  bool next(std::string_view& out) {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view l = text.substr(pos, end - pos);
      pos = end + 1;
      ++line;
      if (const auto h = l.find('#'); h != std::string_view::npos) l = l.substr(0, h);
      const auto first = l.find_first_not_of(" \t\r");
      if (first == std::string_view::npos) continue;
      out = l.substr(first);
      return true;
    }
    return false;
  }
};

template <class T>
std::vector<T> parse_fields(std::string_view l, std::size_t expected, int line) {
  std::vector<T> out;
  std::size_t i = 0;
  while (i < l.size()) {
    while (i < l.size() && (l[i] == ' ' || l[i] == '\t' || l[i] == '\r')) ++i;
    if (i == l.size()) break;
    std::size_t j = i;
    while (j < l.size() && l[j] != ' ' && l[j] != '\t' && l[j] != '\r') ++j;
    T value{};
    const auto res = std::from_chars(l.data() + i, l.data() + j, value);
    if (res.ec != std::errc() || res.ptr != l.data() + j) {
      throw Error(ErrorCode::ParseError, "bad field '" + std::string(l.substr(i, j - i)) + "'", line);
    }
    out.push_back(value);
    i = j;
  }
  if (out.size() != expected) {
    throw Error(ErrorCode::ParseError,
                "expected " + std::to_string(expected) + " fields, found " + std::to_string(out.size()), line);
  }
  return out;
}

}  // namespace

std::string save_mesh(const Mesh& mesh) {
  std::string out;
  if (mesh.family()) {
    out += "# family ";
    out += to_string(*mesh.family());
    out += " n " + std::to_string(mesh.subdivisions()) + "\n";
  }
  out += std::to_string(mesh.num_vertices()) + " " + std::to_string(mesh.num_edges()) + " " +
         std::to_string(mesh.num_cells()) + "\n";
  for (const auto& p : mesh.vertices()) {
    append_double(out, p.x);
    out += ' ';
    append_double(out, p.y);
    out += '\n';
  }
  for (const auto& c : mesh.cells()) {
    out += std::to_string(c[0]) + " " + std::to_string(c[1]) + " " + std::to_string(c[2]) + " " +
           std::to_string(c[3]) + "\n";
  }
  return out;
}

Mesh load_mesh(std::string_view text) {
  LineReader in{text};
  std::string_view l;
  if (!in.next(l)) throw Error(ErrorCode::ParseError, "empty mesh file", in.line);
  const int header_line = in.line;
  const auto header = parse_fields<long>(l, 3, in.line);
  if (header[0] < 0 || header[1] < 0 || header[2] < 0) {
    throw Error(ErrorCode::ParseError, "negative entity count", in.line);
  }
  const auto nv = static_cast<std::size_t>(header[0]);
  const auto nc = static_cast<std::size_t>(header[2]);
  std::vector<Point2> v;
  v.reserve(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    if (!in.next(l)) throw Error(ErrorCode::ParseError, "missing vertex rows", in.line);
    const auto f = parse_fields<double>(l, 2, in.line);
    v.push_back({f[0], f[1]});
  }
  std::vector<std::array<int, 4>> cells;
  cells.reserve(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    if (!in.next(l)) throw Error(ErrorCode::ParseError, "missing cell rows", in.line);
    const auto f = parse_fields<int>(l, 4, in.line);
    for (int idx : f) {
      if (idx < 0 || static_cast<std::size_t>(idx) >= nv) {
        throw Error(ErrorCode::ParseError, "vertex index " + std::to_string(idx) + " out of range", in.line);
      }
    }
    cells.push_back({f[0], f[1], f[2], f[3]});
  }
  if (in.next(l)) throw Error(ErrorCode::ParseError, "trailing data after cell rows", in.line);
  Mesh mesh(std::move(v), std::move(cells));
  if (mesh.num_edges() != header[1]) {
    throw Error(ErrorCode::ParseError,
                "header declares " + std::to_string(header[1]) + " edges, connectivity has " +
                    std::to_string(mesh.num_edges()),
                header_line);
  }
  return mesh;
}

}  // namespace dsfem
