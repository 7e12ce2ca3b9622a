#pragma once

// Seeded generators for the desk-scale image and character corpora, written
// in the same on-disk formats the loaders read (IDX and UTF-8 text).

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "dynsparse/dataset.hpp"

namespace dynsparse {

// Each class is a fixed set of random strokes. A sample is its class
// pattern shifted by up to `max_shift` pixels, rescaled in intensity, with a
// random distractor stroke and pixel noise on top.
struct SyntheticImageSpec {
  std::size_t n_train = 10000;
  std::size_t n_test = 2000;
  std::size_t classes = 10;
  std::size_t size = 16;
  std::size_t strokes = 3;
  std::size_t max_shift = 2;
  double noise = 0.2;
  std::uint64_t seed = 11;
};

struct ImageSplit {
  IdxArray images;  // [N, size, size] unsigned bytes
  IdxArray labels;  // [N]
};

struct SyntheticImages {
  ImageSplit train;
  ImageSplit test;
};

SyntheticImages make_synthetic_images(const SyntheticImageSpec& spec);

// Writes train-images.idx, train-labels.idx, test-images.idx and
// test-labels.idx into `dir`.
void write_synthetic_images(const std::filesystem::path& dir, const SyntheticImageSpec& spec);

// Word-level Markov text over an invented lexicon (some words carry
// non-ASCII letters), grouped into capitalized sentences.
struct SyntheticCorpusSpec {
  std::size_t characters = 200000;
  std::size_t lexicon = 120;
  std::uint64_t seed = 13;
};

std::string make_synthetic_corpus(const SyntheticCorpusSpec& spec);

}  // namespace dynsparse
