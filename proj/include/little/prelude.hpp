/* Copyright 2026 The littlesync Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <string_view>

namespace little {

// Bundled library included with every program. All of its literals are frozen
// unless the caller asks otherwise.
inline constexpr std::string_view kPrelude = R"little(
; --- lists ------------------------------------------------------------------

; The scrutinee is not a list, so the match fails and reports `msg`.
(def fail (\msg (case msg ([] msg))))

(def nil [])
(def cons (\(x xs) [x | xs]))

(defrec range (\(i j)
  (if (> i j) nil
      (cons i (range (+ 1 i) j)))))

(def zeroTo (\n (range 0 (- n 1))))

(def hd (\[x | _] x))
(def tl (\[_ | xs] xs))

(defrec map (\(f xs)
  (case xs
    ([] [])
    ([hd | tl] [(f hd) | (map f tl)]))))

(defrec foldl (\(f acc xs)
  (case xs
    ([] acc)
    ([x | xs1] (foldl f (f x acc) xs1)))))

(defrec foldr (\(f acc xs)
  (case xs
    ([] acc)
    ([x | xs1] (f x (foldr f acc xs1))))))

(defrec append (\(xs ys)
  (case xs
    ([] ys)
    ([x | xs1] [x | (append xs1 ys)]))))

(def snoc (\(x xs) (append xs [x])))
(def concat (foldr append []))
(def concatMap (\(f xs) (concat (map f xs))))

(defrec len (\xs
  (case xs
    ([] 0)
    ([_ | xs1] (+ 1 (len xs1))))))

(def reverse (foldl cons []))

(defrec zip (\(xs ys)
  (case [xs ys]
    ([[x | xs1] [y | ys1]] [[x y] | (zip xs1 ys1)])
    (_ []))))

(defrec repeat (\(n x)
  (if (< n 1) [] [x | (repeat (- n 1) x)])))

(defrec nth (\(xs n)
  (case xs
    ([] (fail 'nth: index out of range'))
    ([x | xs1] (if (= n 0) x (nth xs1 (- n 1)))))))

(def list0N (\n (range 0 n)))
(def list1N (\n (range 1 n)))

; --- booleans and numbers ---------------------------------------------------

(def and (\(a b) (if a b false)))
(def or (\(a b) (if a true b)))
(def xor (\(a b) (if a (not b) b)))
(def notEq (\(a b) (not (= a b))))

(def twoPi (* 2 (pi)))
(def halfPi (/ (pi) 2))

(def clamp (\(i j n) (if (< n i) i (if (< j n) j n))))
(def min (\(a b) (if (< a b) a b)))
(def max (\(a b) (if (< a b) b a)))
(def sum (foldl + 0))

(def natural (\n (and (>= n 0) (= n (floor n)))))

; Integer arithmetic with addition-only traces: (mult 2 sep) has trace
; (+ sep sep). The counting argument must be a natural number.
(defrec multNat (\(m n)
  (if (< m 1) 0
      (if (= m 1) n (+ n (multNat (- m 1) n))))))
(def mult (\(m n)
  (if (natural m) (multNat m n) (fail 'mult: first argument must be a natural number'))))

(defrec minusNat (\(m n)
  (if (< n 1) m (minusNat (+ m -1) (- n 1)))))
(def minus (\(m n)
  (if (and (natural m) (natural n)) (minusNat m n)
      (fail 'minus: arguments must be natural numbers'))))

(defrec divNat (\(m n)
  (if (< m n) 0 (+ 1 (divNat (minusNat m n) n)))))
(def div (\(m n)
  (if (and (natural m) (> n 0)) (divNat m n)
      (fail 'div: first argument must be a natural number and the divisor positive'))))

; --- shapes -----------------------------------------------------------------

(def svg (\shapes ['svg' [] shapes]))
(def svgViewBox (\(w h shapes)
  ['svg' [['viewBox' (+ '0 0 ' (+ (toString w) (+ ' ' (toString h))))]] shapes]))
(def group (\shapes ['g' [] shapes]))

(def rect (\(fill x y w h)
  ['rect' [['x' x] ['y' y] ['width' w] ['height' h] ['fill' fill]] []]))
(def square (\(fill x y side) (rect fill x y side side)))
(def circle (\(fill cx cy r)
  ['circle' [['cx' cx] ['cy' cy] ['r' r] ['fill' fill]] []]))
(def ring (\(stroke w cx cy r)
  ['circle' [['cx' cx] ['cy' cy] ['r' r] ['fill' 'none'] ['stroke' stroke] ['stroke-width' w]] []]))
(def ellipse (\(fill cx cy rx ry)
  ['ellipse' [['cx' cx] ['cy' cy] ['rx' rx] ['ry' ry] ['fill' fill]] []]))
(def line (\(stroke w x1 y1 x2 y2)
  ['line' [['x1' x1] ['y1' y1] ['x2' x2] ['y2' y2] ['stroke' stroke] ['stroke-width' w]] []]))
(def polygon (\(fill stroke w pts)
  ['polygon' [['fill' fill] ['points' pts] ['stroke' stroke] ['stroke-width' w]] []]))
(def polyline (\(stroke w pts)
  ['polyline' [['fill' 'none'] ['points' pts] ['stroke' stroke] ['stroke-width' w]] []]))
(def path (\(fill stroke w d)
  ['path' [['fill' fill] ['d' d] ['stroke' stroke] ['stroke-width' w]] []]))
(def text (\(x y s)
  ['text' [['x' x] ['y' y] ['style' 'fill:black'] ['font-family' 'Tahoma, sans-serif']] [['TEXT' s]]]))

(def consAttr (\([kind attrs children] attr) [kind [attr | attrs] children]))
(def addAttr (\([kind attrs children] attr) [kind (snoc attr attrs) children]))
(def ghost (\shape (consAttr shape ['HIDDEN' ''])))
(def ghosts (map ghost))
(def noZones (\shape (consAttr shape ['ZONES' 'none'])))

(def nPointsOnCircle (\(n rot cx cy r)
  (let pt (\i
    (let angle (+ rot (* i (/ twoPi n)))
      [(+ cx (* r (cos angle))) (+ cy (* r (sin angle)))]))
  (map pt (zeroTo n)))))

(def nStar (\(fill stroke w n len1 len2 rot cx cy)
  (let pti (\[i len]
    (let angle (- (+ rot (/ (* i (pi)) n)) halfPi)
      [(+ cx (* len (cos angle))) (+ cy (* len (sin angle)))]))
  (let lengths (concat (repeat n [len1 len2]))
  (let indices (zeroTo (* 2 n))
    (polygon fill stroke w (map pti (zip indices lengths))))))))

; --- sliders ----------------------------------------------------------------

; slider : Bool -> Num -> Num -> Num -> Num -> Num -> Str -> Num -> [Num (List Svg)]
(def slider (\(roundInt x0 x1 y minVal maxVal caption srcVal)
  (let preVal (clamp minVal maxVal srcVal)
  (let targetVal (if roundInt (round preVal) preVal)
  (let shapes
    (let ball
      (let [xDiff valDiff] [(- x1 x0) (- maxVal minVal)]
      (let xBall (+ x0 (* xDiff (/ (- srcVal minVal) valDiff)))
      (if (= preVal srcVal) (circle 'black' xBall y 10)
                            (circle 'red' xBall y 10))))
    [ (line 'black' 3 x0 y x1 y)
      (text (+ x1 10) (+ y 5) (+ caption (toString targetVal)))
      (circle 'black' x0 y 4)
      (circle 'black' x1 y 4)
      ball ])
  [targetVal (ghosts shapes)])))))

(def [numSlider intSlider] [(slider false) (slider true)])

(def boolSlider (\(x0 x1 y caption srcVal)
  (let [v shapes] (numSlider x0 x1 y 0 1 caption srcVal)
    [(> v 0.5) shapes])))
)little";

}  // namespace little
