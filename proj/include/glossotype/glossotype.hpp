#pragma once

#include "glossotype/cluster.hpp"
#include "glossotype/corpus.hpp"
#include "glossotype/distance.hpp"
#include "glossotype/error.hpp"
#include "glossotype/format.hpp"
#include "glossotype/io.hpp"
#include "glossotype/neural.hpp"
#include "glossotype/ngram.hpp"
#include "glossotype/pipeline.hpp"
#include "glossotype/posgram.hpp"
#include "glossotype/rng.hpp"
#include "glossotype/synthetic.hpp"
#include "glossotype/translit.hpp"
#include "glossotype/unicode.hpp"
