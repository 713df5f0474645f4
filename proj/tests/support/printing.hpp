#pragma once

#include <promptsynth/formula.hpp>

#include <doctest.h>

namespace doctest
{
template<>
struct StringMaker<promptsynth::formula>
{
  static String convert( promptsynth::formula const& f ) { return promptsynth::to_string( f ).c_str(); }
};
} // namespace doctest
