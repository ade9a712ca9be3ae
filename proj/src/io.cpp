#include "pmlda/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pmlda {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line)
{
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ','))
    fields.push_back(field);
  if (!line.empty() && line.back() == ',')
    fields.emplace_back();
  return fields;
}

double parse_number(const std::string& s, const std::filesystem::path& path)
{
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size())
      throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError("bad numeric field '" + s + "' in " + path.string());
  }
}

std::ofstream open_out(const std::filesystem::path& path, bool binary = false)
{
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out)
    throw IoError("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, bool binary = false)
{
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in)
    throw IoError("cannot open for reading: " + path.string());
  return in;
}

void check_doc_id(const std::string& id)
{
  if (id.empty() || id.find(',') != std::string::npos || id.find('\n') != std::string::npos)
    throw IoError("document id unsuitable for CSV: '" + id + "'");
}

// Skips PGM whitespace and '#' comment lines.
int next_pgm_token(std::istream& in, std::string& token)
{
  token.clear();
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty())
        return 1;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token.empty() ? 0 : 1;
}

}  // namespace

std::string format_number(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_corpus_csv(const Corpus& corpus, const std::filesystem::path& path)
{
  validate(corpus);
  auto out = open_out(path);
  out << "doc_id";
  for (Eigen::Index f = 0; f < corpus.dim; ++f)
    out << ",f" << f;
  out << '\n';
  for (const auto& doc : corpus.documents) {
    check_doc_id(doc.id);
    for (Eigen::Index n = 0; n < doc.size(); ++n) {
      out << doc.id;
      for (Eigen::Index f = 0; f < corpus.dim; ++f)
        out << ',' << format_number(doc.words(f, n));
      out << '\n';
    }
  }
}

Corpus read_corpus_csv(const std::filesystem::path& path)
{
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line))
    throw IoError("empty corpus file: " + path.string());
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "doc_id")
    throw IoError("bad corpus header in " + path.string());
  const auto p = static_cast<Eigen::Index>(header.size()) - 1;

  std::vector<std::string> order;
  std::map<std::string, std::vector<Vector>> words;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    const auto fields = split_csv_line(line);
    if (static_cast<Eigen::Index>(fields.size()) != p + 1)
      throw IoError("ragged corpus row in " + path.string());
    Vector word(p);
    for (Eigen::Index f = 0; f < p; ++f)
      word[f] = parse_number(fields[static_cast<std::size_t>(f) + 1], path);
    auto it = words.find(fields[0]);
    if (it == words.end()) {
      order.push_back(fields[0]);
      it = words.emplace(fields[0], std::vector<Vector>{}).first;
    }
    it->second.push_back(std::move(word));
  }

  Corpus corpus;
  corpus.dim = p;
  for (const auto& id : order) {
    const auto& ws = words[id];
    Document doc;
    doc.id = id;
    doc.words.resize(p, static_cast<Eigen::Index>(ws.size()));
    for (std::size_t n = 0; n < ws.size(); ++n)
      doc.words.col(static_cast<Eigen::Index>(n)) = ws[n];
    corpus.documents.push_back(std::move(doc));
  }
  validate(corpus);
  return corpus;
}

void write_memberships_csv(const Corpus& corpus,
                           const std::vector<DocumentState>& states,
                           const std::filesystem::path& path)
{
  if (states.size() != corpus.documents.size())
    throw IoError("write_memberships_csv: state count mismatch");
  const Eigen::Index k = states.empty() ? 0 : states.front().pi.size();
  auto out = open_out(path);
  out << "doc_id,word_index";
  for (Eigen::Index j = 0; j < k; ++j)
    out << ",z" << j;
  out << '\n';
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    check_doc_id(corpus.documents[d].id);
    const Matrix& z = states[d].memberships;
    for (Eigen::Index n = 0; n < z.cols(); ++n) {
      out << corpus.documents[d].id << ',' << n;
      for (Eigen::Index j = 0; j < k; ++j)
        out << ',' << format_number(z(j, n));
      out << '\n';
    }
  }
}

void write_doc_params_csv(const Corpus& corpus,
                          const std::vector<DocumentState>& states,
                          const std::filesystem::path& path)
{
  if (states.size() != corpus.documents.size())
    throw IoError("write_doc_params_csv: state count mismatch");
  const Eigen::Index k = states.empty() ? 0 : states.front().pi.size();
  auto out = open_out(path);
  out << "doc_id,s";
  for (Eigen::Index j = 0; j < k; ++j)
    out << ",pi" << j;
  out << '\n';
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    out << corpus.documents[d].id << ',' << format_number(states[d].s);
    for (Eigen::Index j = 0; j < k; ++j)
      out << ',' << format_number(states[d].pi[j]);
    out << '\n';
  }
}

std::vector<DocumentState> read_states_csv(const Corpus& corpus,
                                           const std::filesystem::path& memberships_path,
                                           const std::filesystem::path& doc_params_path)
{
  std::map<std::string, std::size_t> doc_index;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d)
    doc_index[corpus.documents[d].id] = d;

  std::vector<DocumentState> states(corpus.documents.size());

  {
    auto in = open_in(doc_params_path);
    std::string line;
    if (!std::getline(in, line))
      throw IoError("empty file: " + doc_params_path.string());
    const auto header = split_csv_line(line);
    const auto k = static_cast<Eigen::Index>(header.size()) - 2;
    if (k < 1)
      throw IoError("bad header in " + doc_params_path.string());
    while (std::getline(in, line)) {
      if (line.empty())
        continue;
      const auto fields = split_csv_line(line);
      const auto it = doc_index.find(fields[0]);
      if (it == doc_index.end())
        throw IoError("unknown document '" + fields[0] + "' in " +
                      doc_params_path.string());
      DocumentState& state = states[it->second];
      state.s = parse_number(fields[1], doc_params_path);
      state.pi.resize(k);
      for (Eigen::Index j = 0; j < k; ++j)
        state.pi[j] = parse_number(fields[static_cast<std::size_t>(j) + 2],
                                   doc_params_path);
      state.memberships.resize(k, corpus.documents[it->second].size());
    }
  }

  {
    auto in = open_in(memberships_path);
    std::string line;
    if (!std::getline(in, line))
      throw IoError("empty file: " + memberships_path.string());
    const auto header = split_csv_line(line);
    const auto k = static_cast<Eigen::Index>(header.size()) - 2;
    while (std::getline(in, line)) {
      if (line.empty())
        continue;
      const auto fields = split_csv_line(line);
      const auto it = doc_index.find(fields[0]);
      if (it == doc_index.end())
        throw IoError("unknown document '" + fields[0] + "' in " +
                      memberships_path.string());
      const auto n = static_cast<Eigen::Index>(parse_number(fields[1], memberships_path));
      DocumentState& state = states[it->second];
      if (state.memberships.rows() != k || n < 0 || n >= state.memberships.cols())
        throw IoError("membership row out of range in " + memberships_path.string());
      for (Eigen::Index j = 0; j < k; ++j)
        state.memberships(j, n) =
            parse_number(fields[static_cast<std::size_t>(j) + 2], memberships_path);
    }
  }
  return states;
}

void write_topics_csv(const TopicParams& topics, const std::filesystem::path& path)
{
  auto out = open_out(path);
  out << "topic,sigma2";
  for (Eigen::Index i = 0; i < topics.dim(); ++i)
    out << ",mu" << i;
  out << '\n';
  for (Eigen::Index k = 0; k < topics.topic_count(); ++k) {
    out << k << ',' << format_number(topics.variance);
    for (Eigen::Index i = 0; i < topics.dim(); ++i)
      out << ',' << format_number(topics.means(i, k));
    out << '\n';
  }
}

TopicParams read_topics_csv(const std::filesystem::path& path)
{
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line))
    throw IoError("empty file: " + path.string());
  const auto header = split_csv_line(line);
  const auto p = static_cast<Eigen::Index>(header.size()) - 2;
  if (p < 1)
    throw IoError("bad topics header in " + path.string());

  std::vector<Vector> means;
  double sigma2 = 1.0;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    const auto fields = split_csv_line(line);
    sigma2 = parse_number(fields[1], path);
    Vector mu(p);
    for (Eigen::Index i = 0; i < p; ++i)
      mu[i] = parse_number(fields[static_cast<std::size_t>(i) + 2], path);
    means.push_back(std::move(mu));
  }
  TopicParams topics;
  topics.variance = sigma2;
  topics.means.resize(p, static_cast<Eigen::Index>(means.size()));
  for (std::size_t k = 0; k < means.size(); ++k)
    topics.means.col(static_cast<Eigen::Index>(k)) = means[k];
  validate(topics);
  return topics;
}

void write_chain_csv(const Corpus& corpus, const SampleChain& chain,
                     const std::filesystem::path& path)
{
  auto out = open_out(path);
  out << "sample,iteration,log_posterior,sigma2";
  if (!chain.samples.empty()) {
    const auto& first = chain.samples.front();
    for (Eigen::Index k = 0; k < first.topics.topic_count(); ++k)
      for (Eigen::Index i = 0; i < first.topics.dim(); ++i)
        out << ",mu" << k << '_' << i;
    for (const auto& doc : corpus.documents) {
      out << ",s_" << doc.id;
      for (Eigen::Index j = 0; j < first.states.front().pi.size(); ++j)
        out << ",pi_" << doc.id << '_' << j;
    }
  }
  out << '\n';
  for (std::size_t i = 0; i < chain.samples.size(); ++i) {
    const Sample& sample = chain.samples[i];
    out << i << ',' << sample.iteration << ',' << format_number(sample.log_posterior)
        << ',' << format_number(sample.topics.variance);
    for (Eigen::Index k = 0; k < sample.topics.topic_count(); ++k)
      for (Eigen::Index r = 0; r < sample.topics.dim(); ++r)
        out << ',' << format_number(sample.topics.means(r, k));
    for (const auto& state : sample.states) {
      out << ',' << format_number(state.s);
      for (Eigen::Index j = 0; j < state.pi.size(); ++j)
        out << ',' << format_number(state.pi[j]);
    }
    out << '\n';
  }
}

void write_tokens_csv(const std::vector<std::string>& doc_ids,
                      const TokenCorpus& tokens, const std::filesystem::path& path)
{
  if (doc_ids.size() != tokens.tokens.size())
    throw IoError("write_tokens_csv: id count mismatch");
  auto out = open_out(path);
  out << "doc_id,token_id\n";
  for (std::size_t d = 0; d < tokens.tokens.size(); ++d) {
    check_doc_id(doc_ids[d]);
    for (std::int32_t t : tokens.tokens[d])
      out << doc_ids[d] << ',' << t << '\n';
  }
}

void write_pgm(const ImagePlane& img, const std::filesystem::path& path, int maxval)
{
  validate(img);
  if (maxval != 255 && maxval != 65535)
    throw IoError("write_pgm: maxval must be 255 or 65535");
  auto out = open_out(path, /*binary=*/true);
  out << "P5\n" << img.width() << ' ' << img.height() << '\n' << maxval << '\n';
  for (Eigen::Index r = 0; r < img.height(); ++r) {
    for (Eigen::Index c = 0; c < img.width(); ++c) {
      const double v = img.pixels(r, c);
      if (v < 0.0 || v > static_cast<double>(maxval) || v != std::floor(v))
        throw IoError("write_pgm: pixel value not an integer in [0, maxval]");
      const auto iv = static_cast<unsigned>(v);
      if (maxval == 255) {
        const unsigned char b = static_cast<unsigned char>(iv);
        out.write(reinterpret_cast<const char*>(&b), 1);
      } else {
        const unsigned char bytes[2] = {static_cast<unsigned char>(iv >> 8),
                                        static_cast<unsigned char>(iv & 0xFF)};
        out.write(reinterpret_cast<const char*>(bytes), 2);
      }
    }
  }
  if (!out)
    throw IoError("write_pgm: write failed for " + path.string());
}

ImagePlane read_pgm(const std::filesystem::path& path)
{
  auto in = open_in(path, /*binary=*/true);
  std::string token;
  if (!next_pgm_token(in, token) || token != "P5")
    throw IoError("read_pgm: not a binary PGM: " + path.string());
  Eigen::Index w = 0, h = 0;
  long maxval = 0;
  if (!next_pgm_token(in, token))
    throw IoError("read_pgm: truncated header");
  w = std::stol(token);
  if (!next_pgm_token(in, token))
    throw IoError("read_pgm: truncated header");
  h = std::stol(token);
  if (!next_pgm_token(in, token))
    throw IoError("read_pgm: truncated header");
  maxval = std::stol(token);
  if (w < 1 || h < 1 || maxval < 1 || maxval > 65535)
    throw IoError("read_pgm: bad header in " + path.string());

  ImagePlane img{Array2D(h, w), path.stem().string()};
  const bool two_bytes = maxval > 255;
  for (Eigen::Index r = 0; r < h; ++r) {
    for (Eigen::Index c = 0; c < w; ++c) {
      unsigned char bytes[2] = {0, 0};
      in.read(reinterpret_cast<char*>(bytes), two_bytes ? 2 : 1);
      if (!in)
        throw IoError("read_pgm: truncated pixel data in " + path.string());
      img.pixels(r, c) = two_bytes
                             ? static_cast<double>((bytes[0] << 8) | bytes[1])
                             : static_cast<double>(bytes[0]);
    }
  }
  return img;
}

void write_membership_pgm(const ImagePlane& map, const std::filesystem::path& path)
{
  validate(map);
  if ((map.pixels < 0.0).any() || (map.pixels > 1.0).any())
    throw IoError("write_membership_pgm: memberships must lie in [0, 1]");
  ImagePlane scaled{(map.pixels * 65535.0).round(), map.label};
  write_pgm(scaled, path, 65535);
}

void write_plane_csv(const ImagePlane& img, const std::filesystem::path& path)
{
  validate(img);
  auto out = open_out(path);
  out << "row,col,value\n";
  for (Eigen::Index r = 0; r < img.height(); ++r)
    for (Eigen::Index c = 0; c < img.width(); ++c)
      out << r << ',' << c << ',' << format_number(img.pixels(r, c)) << '\n';
}

void write_float_planes(const std::vector<ImagePlane>& planes,
                        const std::filesystem::path& sidecar_path)
{
  if (planes.empty())
    throw IoError("write_float_planes: no planes");
  const Eigen::Index h = planes.front().height();
  const Eigen::Index w = planes.front().width();
  json sidecar;
  sidecar["width"] = w;
  sidecar["height"] = h;
  sidecar["channels"] = json::array();

  const auto dir = sidecar_path.parent_path();
  for (const auto& plane : planes) {
    validate(plane);
    if (plane.height() != h || plane.width() != w)
      throw IoError("write_float_planes: inconsistent dimensions");
    if (plane.label.empty())
      throw IoError("write_float_planes: channel label required");
    sidecar["channels"].push_back(plane.label);
    auto out = open_out(dir / (plane.label + ".f32"), /*binary=*/true);
    for (Eigen::Index r = 0; r < h; ++r) {
      for (Eigen::Index c = 0; c < w; ++c) {
        const float v = static_cast<float>(plane.pixels(r, c));
        static_assert(sizeof(float) == 4);
        char bytes[4];
        std::memcpy(bytes, &v, 4);
        // Host is little-endian on every supported target; bytes go out as-is.
        out.write(bytes, 4);
      }
    }
  }
  open_out(sidecar_path) << sidecar.dump(2) << '\n';
}

std::vector<ImagePlane> read_float_planes(const std::filesystem::path& sidecar_path)
{
  json sidecar;
  try {
    sidecar = json::parse(open_in(sidecar_path));
  } catch (const json::exception& e) {
    throw IoError("bad sidecar " + sidecar_path.string() + ": " + e.what());
  }
  const auto w = sidecar.at("width").get<Eigen::Index>();
  const auto h = sidecar.at("height").get<Eigen::Index>();
  if (w < 1 || h < 1)
    throw IoError("bad dimensions in " + sidecar_path.string());

  std::vector<ImagePlane> planes;
  const auto dir = sidecar_path.parent_path();
  for (const auto& label : sidecar.at("channels")) {
    const std::string name = label.get<std::string>();
    auto in = open_in(dir / (name + ".f32"), /*binary=*/true);
    ImagePlane plane{Array2D(h, w), name};
    for (Eigen::Index r = 0; r < h; ++r) {
      for (Eigen::Index c = 0; c < w; ++c) {
        char bytes[4];
        in.read(bytes, 4);
        if (!in)
          throw IoError("truncated channel file for '" + name + "'");
        float v;
        std::memcpy(&v, bytes, 4);
        plane.pixels(r, c) = static_cast<double>(v);
      }
    }
    planes.push_back(std::move(plane));
  }
  return planes;
}

std::string string_checksum(const std::string& bytes)
{
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string file_checksum(const std::filesystem::path& path)
{
  auto in = open_in(path, /*binary=*/true);
  std::ostringstream ss;
  ss << in.rdbuf();
  return string_checksum(ss.str());
}

}  // namespace pmlda
