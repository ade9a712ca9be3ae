#pragma once

#include "pmlda/baselines.hpp"
#include "pmlda/corpus.hpp"
#include "pmlda/image.hpp"
#include "pmlda/sampler.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmlda {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal rendering, up to 17 significant digits.
std::string format_number(double v);

/* Corpus CSV: header "doc_id,f0,...,f{p-1}", one row per word. Rows sharing a
 * doc_id form one document, in first-appearance order. */
void write_corpus_csv(const Corpus& corpus, const std::filesystem::path& path);
Corpus read_corpus_csv(const std::filesystem::path& path);

/* Membership CSV: "doc_id,word_index,z0,...,z{K-1}"; document parameter CSV:
 * "doc_id,s,pi0,...,pi{K-1}". */
void write_memberships_csv(const Corpus& corpus,
                           const std::vector<DocumentState>& states,
                           const std::filesystem::path& path);
void write_doc_params_csv(const Corpus& corpus,
                          const std::vector<DocumentState>& states,
                          const std::filesystem::path& path);
std::vector<DocumentState> read_states_csv(const Corpus& corpus,
                                           const std::filesystem::path& memberships_path,
                                           const std::filesystem::path& doc_params_path);

// Topic CSV: "topic,sigma2,mu0,...,mu{p-1}" (sigma2 repeated on every row).
void write_topics_csv(const TopicParams& topics, const std::filesystem::path& path);
TopicParams read_topics_csv(const std::filesystem::path& path);

/* Chain CSV: one row per retained sample with the scalar state — iteration,
 * log posterior, sigma2, flattened topic means, then per-document s and pi. */
void write_chain_csv(const Corpus& corpus, const SampleChain& chain,
                     const std::filesystem::path& path);

// Token corpus CSV: "doc_id,token_id", one row per token.
void write_tokens_csv(const std::vector<std::string>& doc_ids,
                      const TokenCorpus& tokens, const std::filesystem::path& path);

/* Binary PGM (P5), 8-bit or 16-bit big-endian. Reading returns real-valued
 * pixels equal to the stored integers. */
void write_pgm(const ImagePlane& img, const std::filesystem::path& path, int maxval);
ImagePlane read_pgm(const std::filesystem::path& path);

// Membership map as 16-bit PGM: stored value = round(membership * 65535).
void write_membership_pgm(const ImagePlane& map, const std::filesystem::path& path);

// Plane CSV mirror: header "row,col,value".
void write_plane_csv(const ImagePlane& img, const std::filesystem::path& path);

/* Multi-channel raw float planes: 32-bit little-endian floats, row-major,
 * one "<label>.f32" file beside a JSON sidecar {width, height, channels}. */
void write_float_planes(const std::vector<ImagePlane>& planes,
                        const std::filesystem::path& sidecar_path);
std::vector<ImagePlane> read_float_planes(const std::filesystem::path& sidecar_path);

// FNV-1a 64-bit over a file's bytes, rendered as 16 hex digits.
std::string file_checksum(const std::filesystem::path& path);
std::string string_checksum(const std::string& bytes);

}  // namespace pmlda
