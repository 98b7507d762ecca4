#include <fstream>
#include <iostream>
#include <string>

#include "fixtures.hpp"
#include "framemap/corpus.hpp"
#include "framemap/embeddings.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    std::exit(1);
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "data";
  const auto fx = fixtures::planted_corpus(42);
  write_file(dir + "/corpus.csv",
             framemap::export_corpus(fx.corpus, framemap::CorpusFormat::Csv));
  write_file(dir + "/embeddings.jsonl",
             framemap::save_embeddings(fx.store, framemap::EmbeddingFormat::Jsonl));
  std::cout << "wrote " << dir << "/corpus.csv and " << dir << "/embeddings.jsonl\n";
  return 0;
}
