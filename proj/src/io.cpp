#include "choquard/io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace choquard {

// ---- config -----------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string strip_quotes(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

ConfigFile ConfigFile::parse_string(const std::string& text) {
  ConfigFile cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = strip_quotes(trim(line.substr(eq + 1)));
    if (key.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": empty key");
    if (section.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": key before any [section]");
    const std::string full = section + "." + key;
    if (cfg.values_.count(full))
      throw std::runtime_error("config: duplicate key " + full);
    cfg.values_[full] = value;
  }
  return cfg;
}

ConfigFile ConfigFile::parse_file(const std::filesystem::path& path) {
  return parse_string(read_text_file(path));
}

bool ConfigFile::has(const std::string& key) const {
  return values_.count(key) > 0;
}

std::string ConfigFile::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    throw std::runtime_error("config: missing required key " + key);
  return it->second;
}

std::string ConfigFile::get_string(const std::string& key,
                                   const std::string& dflt) const {
  auto it = values_.find(key);
  return (it == values_.end()) ? dflt : it->second;
}

double ConfigFile::get_double(const std::string& key) const {
  const std::string s = get_string(key);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != s.size())
    throw std::runtime_error("config: key " + key + " is not a number: " + s);
  return v;
}

double ConfigFile::get_double(const std::string& key, double dflt) const {
  return has(key) ? get_double(key) : dflt;
}

int ConfigFile::get_int(const std::string& key) const {
  const std::string s = get_string(key);
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != s.size())
    throw std::runtime_error("config: key " + key + " is not an integer: " + s);
  return static_cast<int>(v);
}

int ConfigFile::get_int(const std::string& key, int dflt) const {
  return has(key) ? get_int(key) : dflt;
}

bool ConfigFile::get_bool(const std::string& key, bool dflt) const {
  if (!has(key)) return dflt;
  const std::string s = get_string(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::runtime_error("config: key " + key + " is not a boolean: " + s);
}

std::vector<double> ConfigFile::get_double_list(const std::string& key) const {
  std::string s = get_string(key);
  for (char& c : s)
    if (c == '[' || c == ']') c = ' ';
  std::vector<double> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty())
    throw std::runtime_error("config: key " + key + " is an empty list");
  return out;
}

std::vector<std::string> ConfigFile::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_) out.push_back(k);
  return out;
}

// ---- sha256 -----------------------------------------------------------

namespace {

struct Sha256 {
  uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                   0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  std::array<uint8_t, 64> buf{};
  std::size_t buf_len = 0;
  uint64_t total = 0;

  static uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

  void block(const uint8_t* p) {
    static const uint32_t k[64] = {
        0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b,
        0x59f111f1, 0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01,
        0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7,
        0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc,
        0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152,
        0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
        0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
        0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
        0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819,
        0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116, 0x1e376c08,
        0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f,
        0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
        0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};
    uint32_t w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = (uint32_t(p[4 * i]) << 24) | (uint32_t(p[4 * i + 1]) << 16) |
             (uint32_t(p[4 * i + 2]) << 8) | uint32_t(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
      const uint32_t s0 =
          rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const uint32_t s1 =
          rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5],
             g = h[6], hh = h[7];
    for (int i = 0; i < 64; ++i) {
      const uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      const uint32_t ch = (e & f) ^ (~e & g);
      const uint32_t t1 = hh + s1 + ch + k[i] + w[i];
      const uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      const uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      const uint32_t t2 = s0 + maj;
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
    h[5] += f;
    h[6] += g;
    h[7] += hh;
  }

  void update(const void* data, std::size_t n) {
    const uint8_t* p = static_cast<const uint8_t*>(data);
    total += n;
    while (n > 0) {
      const std::size_t take = std::min(n, buf.size() - buf_len);
      std::memcpy(buf.data() + buf_len, p, take);
      buf_len += take;
      p += take;
      n -= take;
      if (buf_len == buf.size()) {
        block(buf.data());
        buf_len = 0;
      }
    }
  }

  std::string finish() {
    const uint64_t bits = total * 8;
    uint8_t pad = 0x80;
    update(&pad, 1);
    uint8_t zero = 0;
    while (buf_len != 56) update(&zero, 1);
    uint8_t len[8];
    for (int i = 0; i < 8; ++i) len[i] = uint8_t(bits >> (56 - 8 * i));
    update(len, 8);
    std::ostringstream os;
    os << std::hex;
    for (uint32_t x : h)
      for (int i = 3; i >= 0; --i) {
        const uint8_t byte = uint8_t(x >> (8 * i));
        os << (byte >> 4 & 0xf) << (byte & 0xf);
      }
    return os.str();
  }
};

}  // namespace

std::string sha256_hex(const void* data, std::size_t size) {
  Sha256 s;
  s.update(data, size);
  return s.finish();
}

std::string sha256_hex(const std::string& s) {
  return sha256_hex(s.data(), s.size());
}

std::string sha256_file(const std::filesystem::path& path) {
  return sha256_hex(read_text_file(path));
}

// ---- artifacts --------------------------------------------------------

namespace {
constexpr char kMagic[8] = {'C', 'H', 'Q', 'F', 'L', 'D', '0', '1'};
}

void write_field_snapshot(const std::filesystem::path& path,
                          const ComplexField& u, const std::string& kind) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(kMagic, 8);
  const int32_t dim = u.grid.dim, n = u.grid.n;
  const double length = u.grid.length;
  char tag[16] = {0};
  std::snprintf(tag, sizeof(tag), "%.15s", kind.c_str());
  out.write(reinterpret_cast<const char*>(&dim), 4);
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(&length), 8);
  out.write(tag, 16);
  out.write(reinterpret_cast<const char*>(u.v.data()),
            static_cast<std::streamsize>(u.v.size() * sizeof(cxd)));
  if (!out) throw std::runtime_error("write failed: " + path.string());

  std::ostringstream side;
  side << "{\n  \"dim\": " << dim << ",\n  \"n\": " << n
       << ",\n  \"length\": " << format_double(length) << ",\n  \"kind\": \""
       << kind << "\",\n  \"scalar\": \"complex float64 pairs\",\n"
       << "  \"endianness\": \"little\"\n}\n";
  write_text_file(path.string() + ".json", side.str());
}

ComplexField read_field_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char magic[8];
  in.read(magic, 8);
  if (std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("bad snapshot magic in " + path.string());
  int32_t dim = 0, n = 0;
  double length = 0.0;
  char tag[16];
  in.read(reinterpret_cast<char*>(&dim), 4);
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&length), 8);
  in.read(tag, 16);
  ComplexField u(Grid{dim, n, length});
  in.read(reinterpret_cast<char*>(u.v.data()),
          static_cast<std::streamsize>(u.v.size() * sizeof(cxd)));
  if (!in) throw std::runtime_error("truncated snapshot: " + path.string());
  return u;
}

void write_profile_csv(const std::filesystem::path& path,
                       const RadialProfile& profile) {
  std::ostringstream os;
  os << "r,value\n";
  for (int i = 0; i < profile.mesh.m_nodes; ++i)
    os << format_double(profile.mesh.r(i)) << ","
       << format_double(profile.values[i]) << "\n";
  write_text_file(path, os.str());
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace choquard
