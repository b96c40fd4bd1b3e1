#include "lambdav/surface.hpp"

namespace lambdav {

namespace {
constexpr std::string_view kPrelude = R"(# Booleans
def not b = if b then false else true
def and a b = case (a, b) of
  | (true, true) -> true
  | (false, _) -> false
  | (true, false) -> false
def or a b = case (a, b) of
  | (true, _) -> true
  | (false, true) -> true
  | (false, false) -> false

# Naturals. `plus` recurses on its second operand, so `n + 1` is cheap.
def plus m n = case n of
  | 0 -> m
  | succ k -> succ (plus m k)

# n - m, or 'neg when m > n. Always recurses n + 1 times.
def diff n m = case n of
  | 0 -> (case m of | 0 -> 0 | succ _ -> 'neg)
  | succ k -> (case m of | 0 -> succ (diff k 0) | succ j -> diff k j)

def eq a b = case diff a b of | 0 -> true | succ _ -> false | 'neg -> false
def lt a b = case diff a b of | 'neg -> true | 0 -> false | succ _ -> false
def le a b = case diff a b of | 'neg -> true | 0 -> true | succ _ -> false
def gt a b = case diff a b of | succ _ -> true | 0 -> false | 'neg -> false
def ge a b = case diff a b of | succ _ -> true | 0 -> true | 'neg -> false

# Lists
def head l = case l of | h :: _ -> h
def tail l = case l of | _ :: t -> t
)";
} // namespace

std::string_view preludeSource() { return kPrelude; }

} // namespace lambdav
