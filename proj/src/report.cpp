#include "mrlp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>

#include "mrlp/error.hpp"
#include "mrlp/grid_io.hpp"
#include "mrlp/kvfile.hpp"

namespace mrlp {

namespace {

const char* kRatioHeader =
    "filters,d,p,J,K,function,in_vk,norm_f,norm_Sf,ratio,tail,norm_EKf,sign_max,sign_min,status";

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

void write_ratio_csv(std::ostream& out, const std::vector<RatioRecord>& records) {
  out << kRatioHeader << "\r\n";
  for (const auto& r : records) {
    out << csv_field(r.filters) << ',' << r.d << ',' << format_double(r.p) << ',' << r.J << ','
        << r.K << ',' << csv_field(r.function_id) << ',' << (r.in_vk ? 1 : 0) << ','
        << format_double(r.norm_f) << ',' << format_double(r.norm_s) << ',' << format_double(r.ratio)
        << ',' << format_double(r.tail) << ',' << format_double(r.norm_ek) << ','
        << format_double(r.sign_max) << ',' << format_double(r.sign_min) << ','
        << csv_field(r.status) << "\r\n";
  }
}

void write_timings_csv(std::ostream& out, const std::vector<RatioRecord>& records) {
  out << "filters,d,J,K,function,runtime_s\r\n";
  std::string last;
  for (const auto& r : records) {
    const std::string key = r.filters + "|" + std::to_string(r.d) + "|" + r.function_id;
    if (key == last) continue;  // one row per function
    last = key;
    out << csv_field(r.filters) << ',' << r.d << ',' << r.J << ',' << r.K << ','
        << csv_field(r.function_id) << ',' << fmt(r.runtime) << "\r\n";
  }
}

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\r') {
      // Swallowed; the following \n ends the record.
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) fail(ErrorKind::ParseError, "unterminated quoted CSV field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RatioRecord> read_ratio_csv(std::istream& in) {
  const auto rows = parse_csv(in);
  if (rows.empty()) fail(ErrorKind::ParseError, "empty ratio CSV");
  if (rows[0].size() != 15 || rows[0][0] != "filters") fail(ErrorKind::ParseError, "unexpected ratio CSV header");
  std::vector<RatioRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    const std::string where = "ratio CSV row " + std::to_string(i + 1);
    if (f.size() != 15) fail(ErrorKind::ParseError, where + ": expected 15 fields");
    RatioRecord r;
    r.filters = f[0];
    r.d = static_cast<int>(parse_int(f[1], where));
    r.p = parse_double(f[2], where);
    r.J = static_cast<int>(parse_int(f[3], where));
    r.K = static_cast<int>(parse_int(f[4], where));
    r.function_id = f[5];
    r.in_vk = f[6] == "1";
    r.norm_f = parse_double(f[7], where);
    r.norm_s = parse_double(f[8], where);
    r.ratio = parse_double(f[9], where);
    r.tail = parse_double(f[10], where);
    r.norm_ek = parse_double(f[11], where);
    r.sign_max = parse_double(f[12], where);
    r.sign_min = parse_double(f[13], where);
    r.status = f[14];
    out.push_back(r);
  }
  return out;
}

void write_summary(std::ostream& out, const SweepSummary& s) {
  out << "filters " << s.filters << "\n"
      << "d " << s.d << "\n"
      << "J " << s.J << "\n"
      << "K " << s.K << "\n"
      << "sign_trials " << s.trials << "\n"
      << "skipped " << s.skipped << "\n";
  for (const auto& q : s.per_p) {
    out << "p " << format_double(q.p) << " count " << q.count << " ratio_min "
        << format_double(q.ratio_min) << " ratio_max " << format_double(q.ratio_max);
    if (s.trials > 0) {
      out << " sign_min " << format_double(q.sign_min) << " sign_max " << format_double(q.sign_max);
    }
    out << "\n";
  }
}

void write_ratio_svg(std::ostream& out, const std::vector<RatioRecord>& records) {
  const double W = 720;
  const double H = 440;
  const double L = 70;
  const double R = 20;
  const double T = 30;
  const double B = 50;
  double pmin = INFINITY;
  double pmax = -INFINITY;
  double rmin = INFINITY;
  double rmax = -INFINITY;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  for (const auto& r : records) {
    if (r.status != "ok") continue;
    pmin = std::min(pmin, r.p);
    pmax = std::max(pmax, r.p);
    rmin = std::min(rmin, r.ratio);
    rmax = std::max(rmax, r.ratio);
    series[r.filters + " d=" + std::to_string(r.d) + " " + r.function_id].emplace_back(r.p, r.ratio);
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (series.empty()) {
    out << "<text x=\"20\" y=\"30\">no records</text>\n</svg>\n";
    return;
  }
  if (pmax == pmin) pmax = pmin + 1.0;
  const double pad = 0.05 * std::max(rmax - rmin, 1e-3);
  rmin -= pad;
  rmax += pad;
  auto X = [&](double p) { return L + (p - pmin) / (pmax - pmin) * (W - L - R); };
  auto Y = [&](double v) { return H - B - (v - rmin) / (rmax - rmin) * (H - T - B); };
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">p</text>\n"
      << "<text x=\"16\" y=\"" << H / 2 << "\" transform=\"rotate(-90 16 " << H / 2
      << ")\" text-anchor=\"middle\">||S f||_p / ||f||_p</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = rmin + (rmax - rmin) * i / 4.0;
    out << "<text x=\"" << L - 6 << "\" y=\"" << Y(v) + 4 << "\" text-anchor=\"end\">" << fmt(v, "%.3f")
        << "</text>\n";
  }
  std::vector<double> ps;
  for (const auto& [name, pts] : series) {
    for (const auto& pt : pts) ps.push_back(pt.first);
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (double p : ps) {
    out << "<text x=\"" << X(p) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << fmt(p)
        << "</text>\n";
  }
  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                 "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::size_t idx = 0;
  for (auto& [name, pts] : series) {
    std::sort(pts.begin(), pts.end());
    const char* col = colors[idx++ % 10];
    out << "<polyline fill=\"none\" stroke=\"" << col << "\" points=\"";
    for (const auto& [p, v] : pts) out << fmt(X(p), "%.2f") << ',' << fmt(Y(v), "%.2f") << ' ';
    out << "\"><title>" << name << "</title></polyline>\n";
  }
  out << "</svg>\n";
}

}  // namespace mrlp
