#include "dropoff/trace.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dropoff {

namespace {

constexpr const char* kHeader = "n,moved_car,car_id,x,y,social_cost";

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const char* what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::runtime_error(std::string("trace: bad ") + what + " value '" + s + "'");
  }
  return v;
}

long parse_long(const std::string& s, const char* what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    throw std::runtime_error(std::string("trace: bad ") + what + " value '" + s + "'");
  }
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

bool operator==(const TraceStep& a, const TraceStep& b) {
  return a.n == b.n && a.moved == b.moved && a.positions == b.positions &&
         a.social_cost == b.social_cost;
}

bool operator==(const Trace& a, const Trace& b) {
  return a.steps == b.steps && a.terminal == b.terminal;
}

void write_trace_csv(const Trace& trace, std::ostream& out) {
  out << kHeader << "\n";
  for (const TraceStep& s : trace.steps) {
    std::string moved;
    if (s.moved == kMovedInit) {
      moved = "-";
    } else if (s.moved == kMovedAll) {
      moved = "all";
    } else {
      moved = std::to_string(s.moved + 1);
    }
    const std::string cost = fmt_double(s.social_cost);
    for (std::size_t c = 0; c < s.positions.size(); ++c) {
      out << s.n << ',' << moved << ',' << (c + 1) << ','
          << fmt_double(s.positions[c].x) << ',' << fmt_double(s.positions[c].y)
          << ',' << cost << "\n";
    }
  }
  out << "# terminal " << (trace.terminal ? 1 : 0) << "\n";
}

void write_trace_csv(const Trace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("trace: cannot open '" + path + "' for writing");
  }
  write_trace_csv(trace, out);
  if (!out) {
    throw std::runtime_error("trace: write to '" + path + "' failed");
  }
}

Trace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw std::runtime_error("trace: missing or malformed header");
  }
  Trace trace;
  bool saw_terminal = false;
  bool have_record = false;
  TraceStep rec;
  auto flush = [&]() {
    if (have_record) {
      trace.steps.push_back(rec);
      rec = TraceStep{};
      have_record = false;
    }
  };
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    if (line[0] == '#') {
      std::istringstream fs(line);
      std::string hash, word;
      int flag = -1;
      fs >> hash >> word >> flag;
      if (word != "terminal" || (flag != 0 && flag != 1)) {
        throw std::runtime_error("trace: malformed footer '" + line + "'");
      }
      trace.terminal = flag == 1;
      saw_terminal = true;
      continue;
    }
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 6) {
      throw std::runtime_error("trace: expected 6 fields, got row '" + line + "'");
    }
    const long n = parse_long(f[0], "step index");
    int moved = 0;
    if (f[1] == "-") {
      moved = kMovedInit;
    } else if (f[1] == "all") {
      moved = kMovedAll;
    } else {
      moved = static_cast<int>(parse_long(f[1], "moved_car")) - 1;
      if (moved < 0) {
        throw std::runtime_error("trace: moved_car must be positive in '" + line + "'");
      }
    }
    const long car_id = parse_long(f[2], "car_id");
    const Point p{parse_double(f[3], "x"), parse_double(f[4], "y")};
    const double cost = parse_double(f[5], "social_cost");
    if (n < 0) {
      throw std::runtime_error("trace: negative step index in '" + line + "'");
    }
    if (!have_record || rec.n != static_cast<std::size_t>(n)) {
      flush();
      rec.n = static_cast<std::size_t>(n);
      rec.moved = moved;
      rec.social_cost = cost;
      have_record = true;
    }
    if (car_id != static_cast<long>(rec.positions.size()) + 1) {
      throw std::runtime_error("trace: car_id out of sequence in '" + line + "'");
    }
    rec.positions.push_back(p);
  }
  flush();
  if (!saw_terminal) {
    throw std::runtime_error("trace: missing terminal footer");
  }
  if (trace.steps.empty()) {
    throw std::runtime_error("trace: no records");
  }
  return trace;
}

Trace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("trace: cannot open '" + path + "'");
  }
  return read_trace_csv(in);
}

}  // namespace dropoff
